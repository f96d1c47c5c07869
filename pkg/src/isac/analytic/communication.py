"""Communication coverage: interference Laplace functional, SINR and SER coverage."""
from __future__ import annotations

import math

import numpy as np
from scipy import integrate

from ..model import BeamPattern, NetworkParams, QamOrder
from ..specfun import gauss_q, hyp2f1_neg, inv_gauss_q
from ._common import DEFAULT_OPTIONS, EvalOptions, as_probability, gamma_expectation


def tail_factor(x, beta: float, opts: EvalOptions = DEFAULT_OPTIONS):
    """T(x) = x * int_0^1 dv / (1 + x v^(beta/(beta-2))) = x 2F1(1, 1-d; 2-d; -x).

    With it, int_R^inf (1 - 1/(1 + k r^-beta)) r dr = R^2 T(k R^-beta) / (beta - 2).
    The defining path integrates over v (an exact change of variables of the
    PGFL exponent), the closed-form path uses the hypergeometric series.
    """
    x = np.asarray(x, dtype=float)
    if opts.path == "paper_closed_form":
        d = 2.0 / beta
        out = x * hyp2f1_neg(1.0 - d, 2.0 - d, -x)
        return out if np.ndim(out) else float(out)
    p = beta / (beta - 2.0)
    flat = x.ravel()

    def f(v):
        return 1.0 / (1.0 + flat * v**p)

    # knees sit near v = x^(-1/p); give the adaptive rule the breakpoints
    val, _ = integrate.quad_vec(f, 0.0, 1.0, epsrel=opts.rel_tol * 1e-2, epsabs=1e-300,
                                points=_knees(flat, p))
    out = (flat * val).reshape(x.shape)
    return out if out.ndim else float(out)


def _knees(x, p):
    big = x[x > 1.0]
    if big.size == 0:
        return None
    pts = np.unique(np.clip(np.power(big, -1.0 / p), 1e-12, 1 - 1e-12))
    if pts.size > 20:
        pts = np.quantile(pts, np.linspace(0, 1, 20))
    return tuple(pts)


def laplace_interference(s, r1, params: NetworkParams, beam: BeamPattern,
                         opts: EvalOptions = DEFAULT_OPTIONS):
    """E[exp(-s I)] for interference from BSs beyond r1 with Rayleigh fading and
    random sectored gains."""
    s = np.asarray(s, dtype=float)
    r1 = np.asarray(r1, dtype=float)
    if np.any(s < 0) or np.any(r1 <= 0):
        raise ValueError("need s >= 0 and r1 > 0")
    expo = 0.0
    for c_t, m_t in zip(beam.probs, beam.gains):
        x = s * params.p_t * m_t * np.power(r1, -params.beta)
        expo = expo + c_t * tail_factor(x, params.beta, opts)
    expo = 2.0 * math.pi * params.lambda_bs * r1**2 / (params.beta - 2.0) * expo
    out = np.exp(-expo)
    return out if np.ndim(out) else float(out)


def interference_rate(eps2, params: NetworkParams, beam: BeamPattern,
                      opts: EvalOptions = DEFAULT_OPTIONS):
    """rho(eps2): Laplace exponent at s = eps2 r1^beta / (P_T M1), per unit of
    lambda pi r1^2.  It does not depend on r1."""
    eps2 = np.asarray(eps2, dtype=float)
    expo = 0.0
    for c_t, m_t in zip(beam.probs, beam.gains):
        expo = expo + c_t * tail_factor(eps2 * m_t / beam.m1, params.beta, opts)
    return 2.0 * expo / (params.beta - 2.0)


def comm_cov_sinr(eps2, params: NetworkParams, beam: BeamPattern,
                  opts: EvalOptions = DEFAULT_OPTIONS):
    """P{Upsilon >= eps2} with the serving beam aligned (gain M1)."""
    eps2 = np.atleast_1d(np.asarray(eps2, dtype=float))
    if np.any(eps2 < 0):
        raise ValueError("eps2 must be nonnegative")
    rho = np.atleast_1d(interference_rate(eps2, params, beam, opts))
    # noise: eps2 sigma^2 r1^beta / (P_T M1) with r1^beta = (x / lambda pi)^(beta/2)
    noise = eps2 * params.sigma_n2 / (params.p_t * beam.m1) \
        * (params.lambda_bs * math.pi) ** (-params.beta / 2.0)

    def fn(x):
        return np.exp(-rho * x - noise * x ** (params.beta / 2.0))

    raw = gamma_expectation(1, fn, opts.rel_tol)
    out = as_probability(raw, "communication coverage")
    return out if out.size > 1 else float(out[0])


# ---------------------------------------------------------------------------
# symbol error rate
# ---------------------------------------------------------------------------
def ser_of_sinr(upsilon, qam: QamOrder):
    """K-QAM symbol error rate 4vQ - 4v^2 Q^2 at Q = Q(sqrt(varsigma * SINR))."""
    upsilon = np.asarray(upsilon, dtype=float)
    if np.any(upsilon < 0):
        raise ValueError("SINR must be nonnegative")
    q = gauss_q(np.sqrt(qam.varsigma * upsilon))
    out = 4.0 * qam.v * q - 4.0 * qam.v**2 * q * q
    return out if out.ndim else float(out)


def sinr_for_ser(eps3, qam: QamOrder):
    """Smallest SINR meeting SER <= eps3.

    Returns 0.0 when eps3 reaches the zero-SINR error rate (event always true).
    """
    eps3 = np.asarray(eps3, dtype=float)
    if np.any(eps3 <= 0):
        raise ValueError("eps3 must be positive")
    sure = eps3 >= qam.ser_max
    e = np.where(sure, 0.5 * qam.ser_max, eps3)
    # (1 - sqrt(1 - e)) / 2v, written without cancellation for small e
    q = e / (1.0 + np.sqrt(1.0 - e)) / (2.0 * qam.v)
    # q can reach 1/2 only on the boundary, where the threshold is zero anyway
    q = np.minimum(q, 0.5 - 1e-16)
    thr = inv_gauss_q(q) ** 2 / qam.varsigma
    out = np.where(sure, 0.0, np.maximum(thr, 0.0))
    return out if out.ndim else float(out)


def comm_cov_ser(eps3, qam: QamOrder, params: NetworkParams, beam: BeamPattern,
                 opts: EvalOptions = DEFAULT_OPTIONS):
    """P{SER <= eps3}: coverage at the SINR threshold Q^-1((1 - sqrt(1 - eps3)) / 2v)^2 / varsigma."""
    eps3 = np.atleast_1d(np.asarray(eps3, dtype=float))
    thr = np.atleast_1d(sinr_for_ser(eps3, qam))
    out = np.atleast_1d(comm_cov_sinr(thr, params, beam, opts))
    out = np.where(eps3 >= qam.ser_max, 1.0, out)
    return out if out.size > 1 else float(out[0])
