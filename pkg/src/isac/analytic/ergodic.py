"""Ergodic (average) metrics from coverage curves via tail integrals.

For a nonnegative X, E[X^p] = int_0^inf p t^(p-1) P{X > t} dt.  Every
quantity here is such an integral of a coverage function, evaluated with
Simpson's rule on a log-spaced threshold grid.
"""
from __future__ import annotations

import math

import numpy as np

from ..model import BeamPattern, NetworkParams, QamOrder
from ._common import DEFAULT_OPTIONS, DegenerateConditionError, EvalOptions, log_grid
from .communication import comm_cov_sinr, sinr_for_ser
from .joint import joint_cov_sinr
from .positioning import participation_weights

ERGODIC_METRICS = (
    "crlb",
    "rate",
    "ser",
    "crlb_given_sinr",
    "crlb_given_ser",
    "rate_given_crlb",
    "ser_given_crlb",
)

_CRLB_FLOOR = 1e-4  # m^2; P{C <= 1e-4} is negligible at any sane density
_SINR_SPAN = (1e-6, 1e7)
_SER_FLOOR = 1e-9


def _simpson_log(vals, grid) -> float:
    from scipy.integrate import simpson

    return float(simpson(np.asarray(vals) * grid, x=np.log(grid)))


def _grid(lo, hi, opts: EvalOptions) -> np.ndarray:
    return log_grid(lo, hi, opts.ergodic_grid | 1)


def _crlb_moment(cdf, params: NetworkParams, opts: EvalOptions, power: float,
                 localizable_only: bool) -> float:
    """E[C^power] from a (joint-kernel) CRLB CDF on [0, N_L).

    ``cdf(grid)`` returns P{C <= eps, L >= 3, condition}/P{condition}.  With
    ``localizable_only`` the CDF is renormalized by P{L >= 3}; otherwise the
    missing mass sits at C = N_L, which the upper limit N_L accounts for.
    """
    grid = _grid(_CRLB_FLOOR, params.n_l_cap, opts)
    f = np.asarray(cdf(grid), dtype=float)
    if localizable_only:
        p_loc = 1.0 - participation_weights(params, opts)[2]
        f = np.minimum(f / p_loc, 1.0)
    w = power * grid ** (power - 1.0)
    head = _CRLB_FLOOR**power * (1.0 - f[0])
    return head + _simpson_log(w * (1.0 - f), grid)


def ergodic_crlb(params: NetworkParams, beam: BeamPattern, opts: EvalOptions = DEFAULT_OPTIONS,
                 localizable_only: bool = False, power: float = 1.0) -> float:
    """E[C^power] in m^(2 power).  ``power=0.5`` gives the mean RMS error."""
    return _crlb_moment(lambda e: joint_cov_sinr(e, 0.0, params, beam, opts, localizable_only=True),
                        params, opts, power, localizable_only)


def ergodic_crlb_given_sinr(eps2: float, params: NetworkParams, beam: BeamPattern,
                            opts: EvalOptions = DEFAULT_OPTIONS, localizable_only: bool = False,
                            power: float = 1.0) -> float:
    """E[C^power | SINR >= eps2]."""
    pc = comm_cov_sinr(eps2, params, beam, opts)
    if pc < 1e-9:
        raise DegenerateConditionError(f"P{{SINR >= {eps2}}} = {pc:.3g}")
    return _crlb_moment(
        lambda e: joint_cov_sinr(e, eps2, params, beam, opts, localizable_only=True) / pc,
        params, opts, power, localizable_only)


def ergodic_crlb_given_ser(eps3: float, qam: QamOrder, params: NetworkParams, beam: BeamPattern,
                           opts: EvalOptions = DEFAULT_OPTIONS, localizable_only: bool = False,
                           power: float = 1.0) -> float:
    """E[C^power | SER <= eps3]."""
    return ergodic_crlb_given_sinr(float(sinr_for_ser(eps3, qam)), params, beam, opts,
                                   localizable_only, power)


def ergodic_rate(params: NetworkParams, beam: BeamPattern,
                 opts: EvalOptions = DEFAULT_OPTIONS) -> float:
    """E[log2(1 + SINR)] = (1/ln 2) int_0^inf P{SINR >= t} / (1 + t) dt."""
    grid = _grid(*_SINR_SPAN, opts)
    pc = np.atleast_1d(comm_cov_sinr(grid, params, beam, opts))
    return (_SINR_SPAN[0] + _simpson_log(pc / (1.0 + grid), grid)) / math.log(2.0)


def ergodic_ser(params: NetworkParams, beam: BeamPattern, qam: QamOrder,
                opts: EvalOptions = DEFAULT_OPTIONS) -> float:
    """E[S] = int_0^{S_max} P{S > t} dt."""
    grid = _grid(_SER_FLOOR, qam.ser_max * (1 - 1e-12), opts)
    ps = np.atleast_1d(comm_cov_sinr(sinr_for_ser(grid, qam), params, beam, opts))
    return _SER_FLOOR * (1.0 - ps[0]) + _simpson_log(1.0 - ps, grid)


def _given_crlb_denominator(eps1, params, beam, opts):
    pp = joint_cov_sinr(eps1, 0.0, params, beam, opts)
    if pp < 1e-9:
        raise DegenerateConditionError(f"P{{C <= {eps1}}} = {pp:.3g}")
    return pp


def ergodic_rate_given_crlb(eps1: float, params: NetworkParams, beam: BeamPattern,
                            opts: EvalOptions = DEFAULT_OPTIONS) -> float:
    """E[log2(1 + SINR) | C <= eps1]."""
    pp = _given_crlb_denominator(eps1, params, beam, opts)
    grid = _grid(*_SINR_SPAN, opts)
    joint = np.array([joint_cov_sinr(eps1, t, params, beam, opts) for t in grid])
    head = _SINR_SPAN[0] * joint[0] / pp
    return (head + _simpson_log(joint / pp / (1.0 + grid), grid)) / math.log(2.0)


def ergodic_ser_given_crlb(eps1: float, qam: QamOrder, params: NetworkParams, beam: BeamPattern,
                           opts: EvalOptions = DEFAULT_OPTIONS) -> float:
    """E[S | C <= eps1] = int_0^{S_max} (1 - P{S <= t | C <= eps1}) dt."""
    pp = _given_crlb_denominator(eps1, params, beam, opts)
    grid = _grid(_SER_FLOOR, qam.ser_max * (1 - 1e-12), opts)
    thr = np.atleast_1d(sinr_for_ser(grid, qam))
    cond = np.minimum(np.array([joint_cov_sinr(eps1, t, params, beam, opts) for t in thr]) / pp, 1.0)
    return _SER_FLOOR * (1.0 - cond[0]) + _simpson_log(1.0 - cond, grid)


def ergodic(metric: str, params: NetworkParams, beam: BeamPattern,
            opts: EvalOptions = DEFAULT_OPTIONS, *, eps1: float | None = None,
            eps2: float | None = None, eps3: float | None = None,
            qam: QamOrder | None = None, localizable_only: bool = False,
            power: float = 1.0) -> float:
    """Dispatch by metric name; see :data:`ERGODIC_METRICS`."""
    qam = qam or QamOrder(16)
    if metric == "crlb":
        return ergodic_crlb(params, beam, opts, localizable_only, power)
    if metric == "rate":
        return ergodic_rate(params, beam, opts)
    if metric == "ser":
        return ergodic_ser(params, beam, qam, opts)
    if metric == "crlb_given_sinr":
        _need(eps2, "eps2", metric)
        return ergodic_crlb_given_sinr(eps2, params, beam, opts, localizable_only, power)
    if metric == "crlb_given_ser":
        _need(eps3, "eps3", metric)
        return ergodic_crlb_given_ser(eps3, qam, params, beam, opts, localizable_only, power)
    if metric == "rate_given_crlb":
        _need(eps1, "eps1", metric)
        return ergodic_rate_given_crlb(eps1, params, beam, opts)
    if metric == "ser_given_crlb":
        _need(eps1, "eps1", metric)
        return ergodic_ser_given_crlb(eps1, qam, params, beam, opts)
    raise ValueError(f"unknown ergodic metric {metric!r}; expected one of {ERGODIC_METRICS}")


def _need(v, name, metric):
    if v is None or not v > 0:
        raise ValueError(f"{metric} needs a positive {name}")


__all__ = [
    "ERGODIC_METRICS",
    "ergodic",
    "ergodic_crlb",
    "ergodic_crlb_given_ser",
    "ergodic_crlb_given_sinr",
    "ergodic_rate",
    "ergodic_rate_given_crlb",
    "ergodic_ser",
    "ergodic_ser_given_crlb",
]
