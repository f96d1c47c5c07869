"""Joint positioning/communication coverage and its conditional ratios."""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..model import BeamPattern, NetworkParams, QamOrder
from ..specfun import legendre_rule
from ._common import (
    DEFAULT_OPTIONS,
    DegenerateConditionError,
    EvalOptions,
    as_probability,
    beta1_rule,
    binomial_signs,
    gamma_rate,
    laguerre_rule,
)
from .communication import comm_cov_ser, comm_cov_sinr, sinr_for_ser, tail_factor
from .positioning import mu_of_eps1, participation_weights, positioning_cov

METRICS = (
    "positioning",
    "communication_sinr",
    "communication_ser",
    "joint_crlb_sinr",
    "joint_crlb_ser",
    "cond_p_given_s",
    "cond_s_given_p",
    "cond_p_given_c",
    "cond_c_given_p",
)

_NEEDS = {
    "positioning": ("eps1",),
    "communication_sinr": ("eps2",),
    "communication_ser": ("eps3",),
    "joint_crlb_sinr": ("eps1", "eps2"),
    "joint_crlb_ser": ("eps1", "eps3"),
    "cond_p_given_s": ("eps1", "eps3"),
    "cond_s_given_p": ("eps1", "eps3"),
    "cond_p_given_c": ("eps1", "eps2"),
    "cond_c_given_p": ("eps1", "eps2"),
}


def metric_thresholds(metric: str) -> tuple[str, ...]:
    """Names of the thresholds a coverage metric needs."""
    if metric not in _NEEDS:
        raise ValueError(f"unknown metric {metric!r}")
    return _NEEDS[metric]


@dataclass(frozen=True)
class CoverageQuery:
    metric: str
    eps1: float | None = None  # m^2
    eps2: float | None = None  # linear SINR
    eps3: float | None = None  # SER
    qam: QamOrder | None = None

    def __post_init__(self):
        if self.metric not in METRICS:
            raise ValueError(f"unknown metric {self.metric!r}")
        for name in _NEEDS[self.metric]:
            v = getattr(self, name)
            if v is None or not v > 0:
                raise ValueError(f"metric {self.metric} needs a positive {name}")
        if "eps3" in _NEEDS[self.metric]:
            if not self.eps3 < 1:
                raise ValueError("eps3 must be below 1")
            if self.qam is None:
                object.__setattr__(self, "qam", QamOrder(16))

    @property
    def uses_ser(self) -> bool:
        return "eps3" in _NEEDS[self.metric]

    def sinr_threshold(self) -> float:
        if self.uses_ser:
            return float(sinr_for_ser(self.eps3, self.qam))
        return float(self.eps2)


def joint_cov_conditional(eps1, eps2: float, l: int, params: NetworkParams,
                          beam: BeamPattern, opts: EvalOptions = DEFAULT_OPTIONS,
                          nodes: tuple[int, int] | None = None):
    """P{C <= eps1, SINR >= eps2 | l participants}, averaged over (R_1, R_l).

    Works in x = lambda pi r^2.  The (r1, rl) plane uses a Gauss-Laguerre rule
    for x_l ~ Gamma(l) and a Gauss-Jacobi rule for u = x_1/x_l ~ Beta(1, l-1);
    interferers between r1 and rl are handled by a G-point Gauss-Legendre rule
    in r, those beyond rl by the closed tail factor.  ``eps1`` may be an array.
    """
    if l < 3:
        raise ValueError("l must be >= 3")
    if eps2 < 0:
        raise ValueError("eps2 must be nonnegative")
    n_out, n_in = nodes or (opts.outer_nodes, opts.inner_nodes)
    kern = _kernel(float(eps2), int(l), params, beam, opts, int(n_out), int(n_in))
    eps1 = np.atleast_1d(np.asarray(eps1, dtype=float))
    out = np.array([kern(e) for e in eps1])
    out = as_probability(out, "conditional joint coverage")
    return out if out.size > 1 else float(out[0])


@lru_cache(maxsize=256)
def _kernel(eps2, l, params, beam, opts, n_out, n_in):
    beta = params.beta
    lam_pi = params.lambda_bs * math.pi
    xl, wl = laguerre_rule(n_out, float(l - 1))
    u, wu = beta1_rule(n_in, float(l - 1))
    XL = xl[:, None]
    X1 = xl[:, None] * u[None, :]  # (O, I)
    w2 = wl[:, None] * wu[None, :]

    x0 = eps2 * np.array(beam.gains) / beam.m1  # (T,)
    c = np.array(beam.probs)
    noise = eps2 * params.sigma_n2 / (params.p_t * beam.m1) * (X1 / lam_pi) ** (beta / 2.0)

    # beyond r_l: sum_t c_t 2 x_l T(x0_t u^(beta/2)) / (beta - 2)
    z = x0[:, None] * (u[None, :] ** (beta / 2.0))
    tail = c @ np.asarray(tail_factor(z, beta, opts)).reshape(z.shape)
    lam23 = 2.0 * XL * tail[None, :] / (beta - 2.0)  # (O, I)

    # between r1 and rl: G-point rule over rho = sqrt(x) in [sqrt(x1), sqrt(xl)]
    rule = legendre_rule(params.g_quad, 0.0, 1.0)
    s1, sl = np.sqrt(X1), np.sqrt(np.broadcast_to(XL, X1.shape))
    rho = s1[..., None] + (sl - s1)[..., None] * rule.nodes  # (O, I, G)
    jac = (sl - s1)[..., None] * rule.weights * 2.0 * rho
    y = rho * rho
    ratio = (X1[..., None] / y) ** (beta / 2.0)
    fade = np.einsum("t,toig->oig", c, 1.0 / (1.0 + x0[:, None, None, None] * ratio[None]))
    jfade = jac * fade
    base = w2 * np.exp(-noise - lam23 - np.sum(jac, axis=-1))

    n, coef = binomial_signs(params.n_approx, start=0)
    a = gamma_rate(params.n_approx)

    def at(eps1: float) -> float:
        if eps1 <= 0:
            return 0.0
        kappa = a * n * float(mu_of_eps1(eps1, params)) * lam_pi
        total = 0.0
        with np.errstate(over="ignore"):
            for k, cf in zip(kappa, coef):
                if np.isinf(k):
                    continue
                # exp(-lam22) = exp(-sum jac) * exp(sum jac fade e^{-k/y})
                inner = np.exp(np.sum(jfade * np.exp(-k / y), axis=-1) - k / X1)
                total += cf * np.sum(base * inner)
        return total

    return at


def joint_cov_sinr(eps1, eps2: float, params: NetworkParams, beam: BeamPattern,
                   opts: EvalOptions = DEFAULT_OPTIONS, localizable_only: bool = False):
    """P{C <= eps1, SINR >= eps2} mixed over the participation count.

    Unlocalizable snapshots carry C = N_L; their SINR event is treated as
    independent of the positioning outcome.  ``eps1`` may be an array.
    """
    eps1 = np.atleast_1d(np.asarray(eps1, dtype=float))
    levels, weights, p_unloc = participation_weights(params, opts)
    total = np.zeros_like(eps1)
    for l, w in zip(levels, weights):
        if w > 0:
            total += w * np.atleast_1d(
                joint_cov_conditional(eps1, eps2, int(l), params, beam, opts))
    if not localizable_only:
        total += np.where(eps1 >= params.n_l_cap,
                          p_unloc * comm_cov_sinr(eps2, params, beam, opts), 0.0)
    out = as_probability(total, "joint coverage")
    return out if out.size > 1 else float(out[0])


def positioning_marginal(eps1: float, params: NetworkParams, beam: BeamPattern,
                         opts: EvalOptions = DEFAULT_OPTIONS) -> float:
    """Positioning coverage implied by the joint kernel (sure SINR event).

    It pins the nearest BS instead of spreading the l participants over the
    whole disk, so it differs slightly from :func:`positioning_cov`.  Ratios
    and Frechet bounds use this one so that the joint never exceeds it.
    """
    return joint_cov_sinr(eps1, 0.0, params, beam, opts)


def joint_cov(query: CoverageQuery, params: NetworkParams, beam: BeamPattern,
              opts: EvalOptions = DEFAULT_OPTIONS) -> float:
    if query.metric not in ("joint_crlb_sinr", "joint_crlb_ser"):
        raise ValueError("joint_cov takes a joint_* query")
    return joint_cov_sinr(query.eps1, query.sinr_threshold(), params, beam, opts)


def conditional_cov(query: CoverageQuery, params: NetworkParams, beam: BeamPattern,
                    opts: EvalOptions = DEFAULT_OPTIONS) -> float:
    """Ratio of the joint coverage to the conditioning marginal."""
    thr = query.sinr_threshold()
    joint = joint_cov_sinr(query.eps1, thr, params, beam, opts)
    if query.metric in ("cond_p_given_s", "cond_p_given_c"):
        cond = comm_cov_sinr(thr, params, beam, opts)
    elif query.metric in ("cond_s_given_p", "cond_c_given_p"):
        cond = positioning_marginal(query.eps1, params, beam, opts)
    else:
        raise ValueError("conditional_cov takes a cond_* query")
    if cond < 1e-9:
        raise DegenerateConditionError(f"conditioning probability {cond:.3g} is ~0")
    return float(as_probability(joint / cond, "conditional coverage", tol=1e-4))


def coverage(query: CoverageQuery, params: NetworkParams, beam: BeamPattern,
             opts: EvalOptions = DEFAULT_OPTIONS) -> float:
    """Dispatch any :class:`CoverageQuery` to the matching analytic formula."""
    m = query.metric
    if m == "positioning":
        return positioning_cov(query.eps1, params, opts)
    if m == "communication_sinr":
        return comm_cov_sinr(query.eps2, params, beam, opts)
    if m == "communication_ser":
        return comm_cov_ser(query.eps3, query.qam, params, beam, opts)
    if m.startswith("joint"):
        return joint_cov(query, params, beam, opts)
    return conditional_cov(query, params, beam, opts)
