"""Shared plumbing for the analytic engine: options, quadrature, probability guards."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy import integrate, special

from ..specfun import EXP1_LOG_B, gamma_bound_rate

PATHS = ("defining_integral", "paper_closed_form")


class FormulaError(ArithmeticError):
    """A probability left [0, 1] by more than round-off."""


class DegenerateConditionError(ValueError):
    """Conditioning event has (numerically) zero probability."""


@dataclass(frozen=True)
class EvalOptions:
    path: str = "defining_integral"
    rel_tol: float = 1e-7
    # outer tensor rule (R_L Laguerre x R_1/R_L Jacobi) for the joint kernel
    outer_nodes: int = 40
    inner_nodes: int = 32
    # log-spaced threshold grid for the tail-integral expectations
    ergodic_grid: int = 97
    exp1_b: float = EXP1_LOG_B

    def __post_init__(self):
        if self.path not in PATHS:
            raise ValueError(f"path must be one of {PATHS}, got {self.path!r}")
        if not 0 < self.rel_tol < 0.1:
            raise ValueError("rel_tol must lie in (0, 0.1)")


DEFAULT_OPTIONS = EvalOptions()


def as_probability(raw, what: str = "probability", tol: float = 1e-6):
    raw = np.asarray(raw, dtype=float)
    clipped = np.clip(raw, 0.0, 1.0)
    bad = np.abs(raw - clipped) >= tol
    if np.any(bad) or np.any(~np.isfinite(raw)):
        raise FormulaError(f"{what} out of range: {raw[bad] if np.any(bad) else raw}")
    return clipped if clipped.ndim else float(clipped)


def binomial_signs(n_approx: int, start: int = 0):
    """(n, C(N, n) (-1)^n) for n = start..N."""
    n = np.arange(start, n_approx + 1)
    coef = special.comb(n_approx, n) * np.where(n % 2 == 0, 1.0, -1.0)
    return n, coef


def gamma_rate(n_approx: int) -> float:
    return gamma_bound_rate(n_approx)


def gamma_expectation(shape: int, fn, rel_tol: float):
    """E[fn(X)] for X ~ Gamma(shape, 1); ``fn`` maps a scalar to an array."""
    logc = -special.gammaln(shape)

    def integrand(x):
        if x <= 0:
            return 0.0 * np.asarray(fn(1.0))
        w = math.exp((shape - 1) * math.log(x) - x + logc)
        return w * np.asarray(fn(x))

    # split at the mode so the adaptive rule sees the bulk
    mode = max(shape - 1.0, 1.0)
    a, _ = integrate.quad_vec(integrand, 0.0, mode, epsrel=rel_tol, epsabs=1e-300)
    b, _ = integrate.quad_vec(integrand, mode, np.inf, epsrel=rel_tol, epsabs=1e-300)
    return a + b


@lru_cache(maxsize=64)
def laguerre_rule(n: int, alpha: float):
    """Generalized Gauss-Laguerre rule normalized to the Gamma(alpha+1) law."""
    x, w = special.roots_genlaguerre(n, alpha)
    w = w / math.exp(special.gammaln(alpha + 1.0))
    return x, w


@lru_cache(maxsize=64)
def beta1_rule(n: int, b: float):
    """Rule for E[f(U)], U ~ Beta(1, b), via Gauss-Jacobi on (1-x)^(b-1)."""
    x, w = special.roots_jacobi(n, b - 1.0, 0.0)
    u = 0.5 * (x + 1.0)
    w = w / w.sum()
    return u, w


def log_grid(lo: float, hi: float, n: int) -> np.ndarray:
    return np.exp(np.linspace(math.log(lo), math.log(hi), n))


def tail_integral_log(fn, lo: float, hi: float, n: int) -> float:
    """int_lo^hi fn(e) de on a log grid (Simpson in log e)."""
    grid = log_grid(lo, hi, n | 1)
    vals = np.asarray(fn(grid), dtype=float) * grid
    return float(integrate.simpson(vals, x=np.log(grid)))
