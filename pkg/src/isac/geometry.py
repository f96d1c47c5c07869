"""BS point process sampling, ordered-distance laws and RSS position bounds."""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

MAX_EXPECTED_POINTS = 1e7
_LN10 = math.log(10.0)


class SingularGeometryError(ValueError):
    """All BSs collinear with the user; the Fisher information is singular."""


class UnlocalizableError(ValueError):
    """Fewer than three anchors; RSS positioning is impossible."""


@dataclass(frozen=True)
class BsRealization:
    positions: np.ndarray  # (n, 2), sorted by distance from the origin
    window_radius: float

    @property
    def distances(self) -> np.ndarray:
        return np.hypot(self.positions[:, 0], self.positions[:, 1])

    @property
    def angles(self) -> np.ndarray:
        return np.arctan2(self.positions[:, 1], self.positions[:, 0])

    def profile(self, count: int | None = None) -> "DistanceProfile":
        n = len(self.positions) if count is None else count
        return DistanceProfile(self.distances[:n], self.angles[:n])

    def to_text(self) -> str:
        """One ``x y`` pair per line, meters.  Debugging format only."""
        return "".join(f"{x:.9g} {y:.9g}\n" for x, y in self.positions)

    @classmethod
    def from_text(cls, text: str, window_radius: float) -> "BsRealization":
        rows = [line.split() for line in text.splitlines() if line.strip()]
        pos = np.array([[float(a), float(b)] for a, b in rows]).reshape(-1, 2)
        return cls(_sort_points(pos), window_radius)


@dataclass(frozen=True)
class DistanceProfile:
    distances: np.ndarray
    angles: np.ndarray | None = None

    def __post_init__(self):
        d = np.asarray(self.distances, dtype=float)
        if np.any(d <= 0) or np.any(np.diff(d) < 0):
            raise ValueError("distances must be positive and nondecreasing")
        object.__setattr__(self, "distances", d)
        if self.angles is not None:
            a = np.asarray(self.angles, dtype=float)
            if a.shape != d.shape:
                raise ValueError("angles and distances differ in length")
            object.__setattr__(self, "angles", a)


def _sort_points(pos: np.ndarray) -> np.ndarray:
    # lexsort: last key is primary -> distance, then angle, then insertion order
    dist = np.hypot(pos[:, 0], pos[:, 1])
    ang = np.arctan2(pos[:, 1], pos[:, 0])
    order = np.lexsort((np.arange(len(pos)), ang, dist))
    return pos[order]


def _check_budget(lambda_bs, window_radius):
    if lambda_bs <= 0 or window_radius <= 0:
        raise ValueError("density and window radius must be positive")
    expected = lambda_bs * math.pi * window_radius**2
    if expected > MAX_EXPECTED_POINTS:
        raise ValueError(f"expected point count {expected:.3g} exceeds {MAX_EXPECTED_POINTS:.0g}")


def sample_ppp(lambda_bs: float, window_radius: float, seed: int) -> BsRealization:
    """Homogeneous PPP on the disk of radius ``window_radius`` around the origin."""
    _check_budget(lambda_bs, window_radius)
    rng = np.random.default_rng(seed)
    n = rng.poisson(lambda_bs * math.pi * window_radius**2)
    r = window_radius * np.sqrt(rng.random(n))
    th = rng.uniform(-math.pi, math.pi, n)
    pos = np.column_stack((r * np.cos(th), r * np.sin(th)))
    return BsRealization(_sort_points(pos), window_radius)


def sample_ppp_distances(lambda_bs: float, window_radius: float, n: int, rng) -> np.ndarray:
    """Sorted distances of ``n`` independent PPP windows, padded with inf.

    Returns an (n, max_count) array.  Vectorized companion of :func:`sample_ppp`.
    """
    _check_budget(lambda_bs, window_radius)
    counts = rng.poisson(lambda_bs * math.pi * window_radius**2, size=n)
    width = int(counts.max(initial=0))
    r = window_radius * np.sqrt(rng.random((n, width)))
    r[np.arange(width)[None, :] >= counts[:, None]] = np.inf
    r.sort(axis=1)
    return r


# ---------------------------------------------------------------------------
# distance laws
# ---------------------------------------------------------------------------
def pdf_ordered_distance(l: int, lambda_bs: float, r):
    """Density of the distance to the l-th nearest BS."""
    if l < 1:
        raise ValueError("l must be >= 1")
    r = np.asarray(r, dtype=float)
    x = lambda_bs * math.pi * r * r
    with np.errstate(divide="ignore", invalid="ignore"):
        logp = math.log(2.0) + l * np.log(x) - x - np.log(r) - special.gammaln(l)
        out = np.where(r > 0, np.exp(logp), 0.0)
    return out if out.ndim else float(out)


def cdf_ordered_distance(l: int, lambda_bs: float, r):
    """P(R_l <= r) = P(at least l points in the disk of radius r)."""
    r = np.asarray(r, dtype=float)
    out = special.gammainc(l, lambda_bs * math.pi * r * r)
    return out if out.ndim else float(out)


def pdf_r1_given_rl(l: int, r1, rl):
    """Density of the nearest distance given the l-th nearest is at ``rl``.

    The l - 1 closer BSs are i.i.d. uniform in the disk of radius ``rl``, so
    the nearest of them has density 2(l-1) r1 (rl^2 - r1^2)^(l-2) / rl^(2(l-1)).
    For l = 1 the nearest BS *is* the l-th and there is no density.
    """
    if l < 2:
        raise ValueError("R_1 given R_l is degenerate for l = 1")
    r1 = np.asarray(r1, dtype=float)
    rl = np.asarray(rl, dtype=float)
    if np.any(r1 <= 0) or np.any(r1 >= rl):
        raise ValueError("conditional density requires 0 < r1 < rl")
    u = (r1 / rl) ** 2
    out = 2.0 * (l - 1) * r1 / rl**2 * (1.0 - u) ** (l - 2)
    return out if out.ndim else float(out)


def joint_pdf_r1_rl(l: int, lambda_bs: float, r1, rl):
    """Joint density of (R_1, R_l) on 0 < r1 < rl."""
    return pdf_ordered_distance(l, lambda_bs, rl) * pdf_r1_given_rl(l, r1, rl)


# ---------------------------------------------------------------------------
# position error bounds
# ---------------------------------------------------------------------------
def _scale(beta: float, xi: float) -> float:
    return (_LN10 / (10.0 * beta)) ** 2 * xi**2


def fisher_information(profile: DistanceProfile, beta: float, xi: float) -> np.ndarray:
    """2x2 FIM of the user position from log-distance RSS with dB shadowing."""
    if profile.angles is None:
        raise ValueError("angles are required")
    w = (10.0 * beta / _LN10) ** 2 / xi**2 / profile.distances**2
    c, s = np.cos(profile.angles), np.sin(profile.angles)
    return np.array([[np.sum(w * c * c), np.sum(w * c * s)],
                     [np.sum(w * c * s), np.sum(w * s * s)]])


def crlb_exact(profile: DistanceProfile, beta: float, xi: float) -> float:
    """Trace of the inverse FIM, in the sin^2 angle-difference form."""
    if profile.angles is None or len(profile.distances) < 3:
        raise UnlocalizableError("exact CRLB needs >= 3 BSs with angles")
    inv2 = profile.distances ** -2.0
    th = profile.angles
    sin2 = np.sin(th[:, None] - th[None, :]) ** 2
    denom = inv2 @ sin2 @ inv2
    total = inv2.sum()
    # det J / (trace J / 2)^2 = 2 * denom / total^2 ; flags collinear geometries
    if 2.0 * denom / total**2 < 1e-14:
        raise SingularGeometryError("BS geometry is collinear with the user")
    return _scale(beta, xi) * 2.0 * total / denom


def crlb_lower_bound(distances, beta: float, xi: float) -> float:
    """Orientation-optimal CRLB, 4 (ln10/(10 beta))^2 xi^2 / sum r^-2."""
    d = np.asarray(distances, dtype=float)
    if d.size < 3:
        raise UnlocalizableError("positioning needs at least 3 BSs")
    return _scale(beta, xi) * 4.0 / np.sum(d**-2.0)


def achievability_check(distances) -> bool:
    """True iff the lower bound is reachable by re-orienting the BSs."""
    inv2 = np.asarray(distances, dtype=float) ** -2.0
    if inv2.size < 3:
        raise UnlocalizableError("positioning needs at least 3 BSs")
    return bool(inv2.sum() >= 2.0 * inv2.max())


def optimize_orientation(distances, beta: float, xi: float, seed: int = 0, restarts: int = 6):
    """Minimize the exact CRLB over BS bearings. Returns (crlb, angles).

    Uses sum_lm w_l w_m sin^2(t_l - t_m) = ((sum w)^2 - |sum w e^{2it}|^2) / 2,
    which gives an O(L) objective with an analytic gradient.
    """
    from scipy.optimize import minimize

    w = np.asarray(distances, dtype=float) ** -2.0
    tot = w.sum()
    rng = np.random.default_rng(seed)

    def f(th):
        z = w * np.exp(2j * th)
        s = z.sum()
        den = 0.5 * (tot * tot - abs(s) ** 2)
        # d den / d th_k = 2 Im(z_k conj(s))
        dden = 2.0 * np.imag(z * np.conj(s))
        val = 2.0 * tot / max(den, 1e-300)
        return val, -val / max(den, 1e-300) * dden

    best = (np.inf, None)
    for _ in range(restarts):
        res = minimize(f, rng.uniform(0, 2 * math.pi, w.size), jac=True, method="BFGS",
                       options={"gtol": 1e-12})
        if res.fun < best[0]:
            best = (float(res.fun), res.x)
    return _scale(beta, xi) * best[0], best[1]
