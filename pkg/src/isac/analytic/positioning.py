"""Positioning coverage: conditional coverage, localizability and its PMF."""
from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy import special

from ..model import NetworkParams
from ..specfun import interference_exclusion_exponent
from ._common import (
    DEFAULT_OPTIONS,
    EvalOptions,
    as_probability,
    binomial_signs,
    gamma_expectation,
    gamma_rate,
)


def mu_of_eps1(eps1, params: NetworkParams):
    """mu = (10 beta / ln10)^2 eps1 / (4 xi^2); coverage is P{mu sum r^-2 >= 1}."""
    return np.asarray(eps1, dtype=float) / (4.0 * params.crlb_scale)


def _disk_exponent(x, kappa, mode: str, b: float):
    """lambda*pi times 2 int_0^R (1 - e^{-c r^-2}) r dr in units x = lambda pi R^2,
    kappa = lambda pi c."""
    y = kappa / x
    if mode == "exact":
        e1 = special.exp1(y)
    else:
        e1 = -np.log(-np.expm1(-b * y))
    return x * -np.expm1(-y) + kappa * e1


def positioning_cov_conditional(eps1, l: int, params: NetworkParams,
                                opts: EvalOptions = DEFAULT_OPTIONS,
                                anchor_boundary: bool = False):
    """P{C <= eps1 | l BSs participate}.

    The Laplace functional of sum r^-2 over the l participants is replaced by
    the PPP functional over the disk of radius R_l, averaged over R_l.  With
    ``anchor_boundary`` the l-th BS is additionally pinned on the rim, which
    makes the eps1 -> inf limit exactly one.
    """
    if l < 3:
        raise ValueError("conditional positioning coverage needs l >= 3")
    eps1 = np.atleast_1d(np.asarray(eps1, dtype=float))
    n, coef = binomial_signs(params.n_approx, start=1)
    a = gamma_rate(params.n_approx)
    lam_pi = params.lambda_bs * math.pi
    finite = np.where(np.isinf(eps1), 1.0, eps1)  # inf handled by the limit below
    kappa = a * n[None, :] * mu_of_eps1(finite, params)[:, None] * lam_pi  # (E, N)
    mode = "exact" if opts.path == "defining_integral" else "approx"

    def fn(x):
        expo = _disk_exponent(x, kappa, mode, opts.exp1_b)
        if anchor_boundary:
            expo = expo + kappa / x
        return np.exp(-expo)

    lap = gamma_expectation(l, fn, opts.rel_tol)
    raw = 1.0 + lap @ coef
    raw = np.where(np.isinf(eps1), 1.0 if anchor_boundary else 1.0 - 2.0**-l, raw)
    out = as_probability(raw, "conditional positioning coverage")
    return out if out.size > 1 else float(out[0])


def _exclusion_rate(t, beta):
    """h(t) = lambda pi R^-2 x (exclusion exponent) for c = t R^beta: the
    interference Laplace exponent beyond the l-th BS per unit of lambda pi R^2."""
    return interference_exclusion_exponent(t, beta, 1.0)


def localizability(l: int, gamma, params: NetworkParams, opts: EvalOptions = DEFAULT_OPTIONS):
    """P{fading-free SINR of the l-th nearest BS >= gamma}."""
    if l < 1:
        raise ValueError("l must be >= 1")
    gamma = float(gamma)
    if gamma <= 0:
        return 1.0
    n, coef = binomial_signs(params.n_approx, start=1)
    a = gamma_rate(params.n_approx)
    t = a * n * gamma
    h = _exclusion_rate(t, params.beta)  # per unit x = lambda pi r^2
    # noise term a n gamma r^beta N0/P_T with r^beta = (x / lambda pi)^(beta/2)
    noise = t * params.n0 / params.p_t * (params.lambda_bs * math.pi) ** (-params.beta / 2.0)

    def fn(x):
        return np.exp(-h * x - noise * x ** (params.beta / 2.0))

    lap = gamma_expectation(l, fn, opts.rel_tol)
    raw = -(lap @ coef)
    return as_probability(raw, "localizability")


def localizability_curve(l_max: int, gamma, params: NetworkParams,
                         opts: EvalOptions = DEFAULT_OPTIONS) -> np.ndarray:
    """[P_L(1), ..., P_L(l_max)] made nonincreasing against quadrature noise."""
    vals = np.array([localizability(l, gamma, params, opts) for l in range(1, l_max + 1)])
    return np.minimum.accumulate(vals)


def pmf_participation(l: int, gamma, params: NetworkParams, opts: EvalOptions = DEFAULT_OPTIONS):
    """P{exactly l BSs pass the localizability threshold}."""
    d = localizability(l, gamma, params, opts) - localizability(l + 1, gamma, params, opts)
    if d < -1e-9:
        raise ValueError(f"negative participation mass {d:.3g} at l={l}")
    return max(d, 0.0)


def participation_weights(params: NetworkParams, opts: EvalOptions = DEFAULT_OPTIONS):
    """Mixture weights over l = 3..L_P and the unlocalizable mass.

    Returns ``(levels, weights, p_unlocalizable)`` where weights[i] is the
    PMF for l < L_P and P_L(L_P) for the cap level.
    """
    levels, weights, p_unloc = _participation_weights(params, opts)
    return levels.copy(), weights.copy(), p_unloc


@lru_cache(maxsize=128)
def _participation_weights(params, opts):
    curve = localizability_curve(params.l_p, params.gamma, params, opts)
    levels = np.arange(3, params.l_p + 1)
    pl = curve[levels - 1]
    weights = np.append(pl[:-1] - pl[1:], pl[-1])
    weights = np.maximum(weights, 0.0)
    return levels, weights, 1.0 - curve[2]


def positioning_cov(eps1, params: NetworkParams, opts: EvalOptions = DEFAULT_OPTIONS,
                    anchor_boundary: bool = False, localizable_only: bool = False):
    """Marginal positioning coverage mixed over the participation count.

    ``localizable_only`` drops the unlocalizable step term and returns the
    joint probability P{C <= eps1, L >= 3}.
    """
    eps1 = np.atleast_1d(np.asarray(eps1, dtype=float))
    levels, weights, p_unloc = participation_weights(params, opts)
    total = np.zeros_like(eps1)
    for l, w in zip(levels, weights):
        if w > 0:
            total += w * np.atleast_1d(
                positioning_cov_conditional(eps1, int(l), params, opts, anchor_boundary))
    if not localizable_only:
        total += np.where(eps1 >= params.n_l_cap, p_unloc, 0.0)
    out = as_probability(total, "positioning coverage")
    return out if out.size > 1 else float(out[0])
