"""Special functions and quadrature rules used by the analytic engine.

All functions accept numpy arrays where it makes sense and broadcast.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

EULER_GAMMA = 0.5772156649015329
# constant b in  int_x^inf e^-t/t dt ~ -ln(1 - e^{-b x})
EXP1_LOG_B = math.exp(EULER_GAMMA)


# --------------------------------------------------------------------------
# Gaussian tail
# --------------------------------------------------------------------------
def gauss_q(x):
    """Standard Gaussian upper-tail probability Q(x)."""
    return 0.5 * special.erfc(np.asarray(x, dtype=float) / math.sqrt(2.0))


def _gauss_pdf(x):
    return np.exp(-0.5 * x * x) / math.sqrt(2.0 * math.pi)


def inv_gauss_q(p):
    """Inverse of :func:`gauss_q` on (0, 1).

    Bisection on a fixed bracket followed by Newton polishing.
    """
    p = np.asarray(p, dtype=float)
    if np.any(~np.isfinite(p)) or np.any(p <= 0) or np.any(p >= 1):
        raise ValueError("inv_gauss_q requires 0 < p < 1")
    lo = np.full(p.shape, -40.0)
    hi = np.full(p.shape, 40.0)
    for _ in range(80):
        mid = 0.5 * (lo + hi)
        above = gauss_q(mid) > p  # root lies right of mid
        lo = np.where(above, mid, lo)
        hi = np.where(above, hi, mid)
    x = 0.5 * (lo + hi)
    for _ in range(3):
        dens = _gauss_pdf(x)
        step = np.where(dens > 0, (gauss_q(x) - p) / np.where(dens > 0, dens, 1.0), 0.0)
        x = x + step
    return x if x.ndim else float(x)


# --------------------------------------------------------------------------
# Incomplete gamma
# --------------------------------------------------------------------------
def _upper_gamma(w: float, z):
    """Upper incomplete gamma Gamma(w, z) for real w and z > 0 (unregularized)."""
    z = np.asarray(z, dtype=float)
    if w > 0:
        return special.gamma(w) * special.gammaincc(w, z)
    m = int(math.floor(-w)) + 1  # w + m > 0
    top = w + m
    if abs(top - round(top)) < 1e-14 and round(top) == 1:
        # integer w <= 0: start from Gamma(0, z) = E1(z)
        val = special.exp1(z)
        start = 0.0
        steps = int(round(-w))
    else:
        val = special.gamma(top) * special.gammaincc(top, z)
        start = top
        steps = m
    s = start
    for _ in range(steps):
        s -= 1.0
        # Gamma(s, z) = (Gamma(s + 1, z) - z^s e^-z) / s
        val = (val - np.power(z, s) * np.exp(-z)) / s
    return val


def gen_inc_gamma(w: float, z0, z1):
    """Generalized incomplete gamma  int_{z0}^{z1} t^(w-1) e^-t dt.

    ``z1`` may be ``inf``.  For ``w <= 0`` the lower limit must be positive.
    """
    z0 = np.asarray(z0, dtype=float)
    z1 = np.asarray(z1, dtype=float)
    if np.any(z0 < 0) or np.any(z1 < z0):
        raise ValueError("gen_inc_gamma requires 0 <= z0 <= z1")
    if w <= 0 and np.any(z0 == 0):
        raise ValueError(
            "divergent integral for w <= 0 with z0 = 0; "
            "use interference_exclusion_exponent instead"
        )
    if w > 0:
        g = special.gamma(w)
        # pick the better-conditioned difference
        lower = g * (special.gammainc(w, z1) - special.gammainc(w, z0))
        upper = g * (special.gammaincc(w, z0) - special.gammaincc(w, z1))
        out = np.where(z0 >= w, upper, lower)
    else:
        hi = np.where(np.isinf(z1), 0.0, _upper_gamma(w, np.where(np.isinf(z1), 1.0, z1)))
        out = _upper_gamma(w, z0) - hi
    return out if out.ndim else float(out)


# --------------------------------------------------------------------------
# Gauss hypergeometric 2F1(1, b; c; z), z <= 0
# --------------------------------------------------------------------------
def _series_1bc(b, c, z, max_terms=4000, tol=1e-17):
    """sum_n (b)_n/(c)_n z^n  (the a = 1 series) for |z| < 1."""
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = np.ones_like(z)
    for n in range(max_terms):
        term = term * (b + n) / (c + n) * z
        total = total + term
        if np.all(np.abs(term) <= tol * np.abs(total)):
            break
    return total


def _series_general(a, b, c, z, max_terms=4000, tol=1e-17):
    z = np.asarray(z, dtype=float)
    term = np.ones_like(z)
    total = np.ones_like(z)
    for n in range(max_terms):
        term = term * (a + n) * (b + n) / ((c + n) * (n + 1)) * z
        total = total + term
        if np.all(np.abs(term) <= tol * np.abs(total)):
            break
    return total


def hyp2f1_neg(b: float, c: float, z):
    """2F1(1, b; c; z) for z <= 0.

    Power series on [-1/2, 0], the Pfaff transform z -> z/(z-1) on [-2, -1/2)
    and the 1/z connection formula below -2.
    """
    z = np.asarray(z, dtype=float)
    if np.any(z > 0):
        raise ValueError("hyp2f1_neg is defined here only for z <= 0")
    out = np.empty_like(z)
    near = z >= -0.5
    mid = (z < -0.5) & (z >= -2.0)
    far = z < -2.0
    if np.any(near):
        out[near] = _series_1bc(b, c, z[near])
    if np.any(mid):
        zm = z[mid]
        w = zm / (zm - 1.0)
        # 2F1(1, b; c; z) = (1 - z)^-1 2F1(1, c - b; c; w)
        out[mid] = _series_1bc(c - b, c, w) / (1.0 - zm)
    if np.any(far):
        zf = z[far]
        a = 1.0
        if abs((b - a) - round(b - a)) < 1e-12:
            # degenerate connection formula; fall back to a slow Pfaff series
            w = zf / (zf - 1.0)
            out[far] = _series_1bc(c - b, c, w, max_terms=200000) / (1.0 - zf)
        else:
            x = 1.0 / zf
            g = special.gamma
            t1 = (g(c) * g(b - a) / (g(b) * g(c - a))) * np.power(-zf, -a) \
                * _series_general(a, a - c + 1.0, a - b + 1.0, x)
            t2 = (g(c) * g(a - b) / (g(a) * g(c - b))) * np.power(-zf, -b) \
                * _series_general(b, b - c + 1.0, b - a + 1.0, x)
            out[far] = t1 + t2
    return out if out.ndim else float(out)


def shot_noise_tail(k, beta: float, r0):
    """int_{r0}^inf (1 - 1/(1 + k r^-beta)) r dr, closed form through 2F1.

    Equals k r0^(2-beta) / (beta-2) * 2F1(1, 1-2/beta; 2-2/beta; -k r0^-beta).
    """
    k = np.asarray(k, dtype=float)
    r0 = np.asarray(r0, dtype=float)
    d = 2.0 / beta
    x = k * np.power(r0, -beta)
    val = x * r0 * r0 / (beta - 2.0) * hyp2f1_neg(1.0 - d, 2.0 - d, -x)
    return val if np.ndim(val) else float(val)


# --------------------------------------------------------------------------
# Gamma-CDF surrogate and exponential integrals
# --------------------------------------------------------------------------
def gamma_bound_rate(n: int) -> float:
    """a = N (N!)^(-1/N)."""
    return n * math.exp(-math.lgamma(n + 1) / n)


def gamma_cdf_bound(c, n: int):
    """(1 - e^{-a c})^N, the closed-form surrogate for P(g < c), g ~ Gamma(N, 1/N).

    For N > 1 it sits *below* the exact CDF (Alzer's inequality); it is exact
    at N = 1.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    a = gamma_bound_rate(n)
    c = np.asarray(c, dtype=float)
    out = np.power(-np.expm1(-a * c), n)
    return out if out.ndim else float(out)


def _exp1_log_approx(x, b=EXP1_LOG_B):
    """-ln(1 - e^{-b x}) as a stand-in for E1(x)."""
    return -np.log(-np.expm1(-b * np.asarray(x, dtype=float)))


def exp_invsq_integral(mu, tau1, tau2, mode: str = "exact", b: float = EXP1_LOG_B):
    """int_{tau1}^{tau2} exp(-mu r^-2) r dr.

    ``exact`` uses the exponential-integral closed form,
    ``approx`` swaps E1 for the logarithmic surrogate.  ``tau2`` may be inf.
    """
    mu = np.asarray(mu, dtype=float)
    tau1 = np.asarray(tau1, dtype=float)
    tau2 = np.asarray(tau2, dtype=float)
    if np.any(tau1 <= 0) or np.any(tau2 <= tau1):
        raise ValueError("exp_invsq_integral requires 0 < tau1 < tau2")
    if np.any(np.isinf(tau2)):
        raise ValueError("integral diverges for tau2 = inf")
    x1 = mu / tau1**2
    x2 = mu / tau2**2
    # mu/2 * (e^-x/x) evaluated as tau^2/2 e^-x to stay finite as mu -> 0
    boundary = 0.5 * (tau2**2 * np.exp(-x2) - tau1**2 * np.exp(-x1))
    if mode == "exact":
        e1 = lambda x: special.exp1(x)  # noqa: E731
    elif mode == "approx":
        e1 = lambda x: _exp1_log_approx(x, b)  # noqa: E731
    else:
        raise ValueError(f"unknown mode {mode!r}")
    with np.errstate(invalid="ignore"):
        tail = np.where(mu > 0, 0.5 * mu * (e1(x2) - e1(x1)), 0.0)
    out = boundary - tail
    return out if out.ndim else float(out)


def disk_pgfl_exponent(c, radius, mode: str = "exact", b: float = EXP1_LOG_B):
    """2 int_0^R (1 - exp(-c r^-2)) r dr.

    The integrand tends to 1 at the origin, so this is
    R^2 (1 - e^{-x}) + c E1(x) with x = c / R^2.
    """
    c = np.asarray(c, dtype=float)
    radius = np.asarray(radius, dtype=float)
    x = c / radius**2
    if mode == "exact":
        e1 = special.exp1(x)
    elif mode == "approx":
        e1 = _exp1_log_approx(x, b)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    out = radius**2 * -np.expm1(-x) + c * e1
    return out if out.ndim else float(out)


def interference_exclusion_exponent(c, beta: float, r_excl, method: str = "closed"):
    """2 int_{r_excl}^inf (1 - exp(-c r^-beta)) r dr.

    ``closed`` evaluates c^(2/beta) Gamma(1-2/beta, 0, t) - r^2 (1 - e^-t),
    t = c r_excl^-beta, switching to a cancellation-free series for small t.
    ``quad`` integrates the defining form directly (scalar only).
    """
    if beta <= 2:
        raise ValueError("beta must exceed 2")
    if method == "quad":
        c = float(c)
        r_excl = float(r_excl)
        if c == 0:
            return 0.0
        # linear part in closed form; quadrature on the quadratic remainder
        # x - (1 - e^-x), substituted u = r_excl / r
        linear = 2.0 * c * r_excl ** (2.0 - beta) / (beta - 2.0)

        def f(u):
            if u == 0.0:
                return 0.0
            r = r_excl / u
            x = c * r**-beta
            rem = x + math.expm1(-x)
            return 2.0 * rem * r * r_excl / (u * u)
        val, _ = integrate.quad(f, 0.0, 1.0, epsabs=0.0, epsrel=1e-13, limit=400)
        val = linear - val
        return val
    if method != "closed":
        raise ValueError(f"unknown method {method!r}")
    c = np.asarray(c, dtype=float)
    r_excl = np.asarray(r_excl, dtype=float)
    d = 2.0 / beta
    t = c * np.power(r_excl, -beta)
    small = t < 0.5
    out = np.empty(np.broadcast(t, r_excl).shape)
    t_b = np.broadcast_to(t, out.shape)
    r2 = np.broadcast_to(r_excl**2, out.shape)
    if np.any(small):
        ts = t_b[small]
        acc = np.zeros_like(ts)
        term = np.ones_like(ts)  # (-t)^k / k!
        for k in range(40):
            acc += term * d / ((k + 1.0 - d) * (k + 1.0))
            term = term * (-ts) / (k + 1.0)
        out[small] = r2[small] * ts * acc
    big = ~small
    if np.any(big):
        tb = t_b[big]
        lower = special.gamma(1.0 - d) * special.gammainc(1.0 - d, tb)
        out[big] = r2[big] * (np.power(tb, d) * lower + np.expm1(-tb))
    return out if out.ndim else float(out)


# --------------------------------------------------------------------------
# Quadrature rules
# --------------------------------------------------------------------------
@dataclass(frozen=True)
class QuadratureRule:
    nodes: np.ndarray
    weights: np.ndarray
    order: int
    interval: tuple[float, float]

    def integrate(self, f):
        return np.sum(self.weights * f(self.nodes))


def legendre_rule(g: int, a: float = -1.0, b: float = 1.0) -> QuadratureRule:
    """G-point Gauss-Legendre rule mapped onto [a, b]."""
    if g < 2:
        raise ValueError("order must be >= 2")
    if not a < b:
        raise ValueError("interval must satisfy a < b")
    x, w = np.polynomial.legendre.leggauss(g)
    half = 0.5 * (b - a)
    nodes = a + half * (x + 1.0)
    return QuadratureRule(nodes=nodes, weights=w * half, order=g, interval=(a, b))
