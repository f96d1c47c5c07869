"""Network parameters and unit handling.

Everything downstream works in SI units: meters, watts, linear gains and
densities per square meter.  Conversion from the dB / dBm / km^-2 values used
in configs happens here and nowhere else.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

XI_INTERPRETATIONS = ("power_db", "amplitude_db", "raw")


def db_to_linear(x_db: float) -> float:
    return 10.0 ** (x_db / 10.0)


def linear_to_db(x: float) -> float:
    if not x > 0:
        raise ValueError(f"linear value must be positive, got {x!r}")
    return 10.0 * math.log10(x)


def dbm_to_watts(x_dbm: float) -> float:
    """Power in dBm (referenced to 1 mW) to watts."""
    return 10.0 ** ((x_dbm - 30.0) / 10.0)


def xi_from_db(xi_db: float, interpretation: str = "power_db") -> float:
    """Shadowing standard deviation from the dB-style setting.

    ``power_db`` reads the value as 10^(x/10), ``amplitude_db`` as 10^(x/20)
    and ``raw`` takes its magnitude literally.
    """
    if interpretation == "power_db":
        return 10.0 ** (xi_db / 10.0)
    if interpretation == "amplitude_db":
        return 10.0 ** (xi_db / 20.0)
    if interpretation == "raw":
        return abs(xi_db)
    raise ValueError(
        f"unknown xi interpretation {interpretation!r}; expected one of {XI_INTERPRETATIONS}"
    )


def _check_positive(name, value):
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    if value <= 0:
        raise ValueError(f"{name} must be positive, got {value!r}")


@dataclass(frozen=True)
class NetworkParams:
    """Physical and model constants, stored in linear SI units.

    Use :meth:`from_units` to build from dB/dBm/km^-2 settings.
    """

    lambda_bs: float  # BS density per m^2
    beta: float = 3.6
    p_t: float = 1.0  # W
    n0: float = dbm_to_watts(-89.0)  # positioning noise, W
    sigma_n2: float = dbm_to_watts(-89.0)  # communication noise, W
    xi: float = xi_from_db(-9.0)
    gamma: float = db_to_linear(-15.0)
    l_p: int = 10
    n_l_cap: float = 1.0e4  # m^2
    n_approx: int = 5
    g_quad: int = 32

    def __post_init__(self):
        for name in ("lambda_bs", "p_t", "n0", "sigma_n2", "xi", "gamma", "n_l_cap"):
            _check_positive(name, getattr(self, name))
        if not math.isfinite(self.beta) or self.beta <= 2:
            raise ValueError(f"beta must be > 2, got {self.beta!r}")
        if int(self.l_p) != self.l_p or self.l_p < 3:
            raise ValueError(f"l_p must be an integer >= 3, got {self.l_p!r}")
        if int(self.n_approx) != self.n_approx or self.n_approx < 5:
            raise ValueError(f"n_approx must be an integer >= 5, got {self.n_approx!r}")
        if int(self.g_quad) != self.g_quad or self.g_quad < 2:
            raise ValueError(f"g_quad must be an integer >= 2, got {self.g_quad!r}")
        object.__setattr__(self, "l_p", int(self.l_p))
        object.__setattr__(self, "n_approx", int(self.n_approx))
        object.__setattr__(self, "g_quad", int(self.g_quad))

    @classmethod
    def from_units(
        cls,
        lambda_bs_per_km2: float = 8.0 / math.sqrt(3.0),
        beta: float = 3.6,
        p_t_db: float = 0.0,
        n0_dbm: float = -89.0,
        sigma_n2_dbm: float = -89.0,
        xi_db: float = -9.0,
        xi_interpretation: str = "power_db",
        gamma_db: float = -15.0,
        l_p: int = 10,
        n_l_cap_m2: float = 1.0e4,
        n_approx: int = 5,
        g_quad: int = 32,
        lambda_u_per_km2: float | None = None,
    ) -> "NetworkParams":
        for name, v in (("lambda_bs_per_km2", lambda_bs_per_km2), ("p_t_db", p_t_db),
                        ("n0_dbm", n0_dbm), ("sigma_n2_dbm", sigma_n2_dbm),
                        ("xi_db", xi_db), ("gamma_db", gamma_db)):
            if not math.isfinite(v):
                raise ValueError(f"{name} must be finite, got {v!r}")
        if lambda_u_per_km2 is not None:
            warnings.warn("user density lambda_u is accepted but unused by every metric",
                          stacklevel=2)
        return cls(
            lambda_bs=lambda_bs_per_km2 * 1e-6,
            beta=beta,
            p_t=db_to_linear(p_t_db),
            n0=dbm_to_watts(n0_dbm),
            sigma_n2=dbm_to_watts(sigma_n2_dbm),
            xi=xi_from_db(xi_db, xi_interpretation),
            gamma=db_to_linear(gamma_db),
            l_p=l_p,
            n_l_cap=n_l_cap_m2,
            n_approx=n_approx,
            g_quad=g_quad,
        )

    def with_(self, **changes) -> "NetworkParams":
        return replace(self, **changes)

    @property
    def crlb_scale(self) -> float:
        """(ln10 / (10 beta))^2 xi^2, the common CRLB prefactor in m^0."""
        return (math.log(10.0) / (10.0 * self.beta)) ** 2 * self.xi**2

    @property
    def delta(self) -> float:
        return 2.0 / self.beta


@dataclass(frozen=True)
class BeamPattern:
    """Two-level sectored antenna pattern."""

    m1: float = 1.0
    m2: float = 0.01
    phi: float = math.radians(30.0)

    def __post_init__(self):
        for name in ("m1", "m2", "phi"):
            _check_positive(name, getattr(self, name))
        if self.m2 > self.m1:
            raise ValueError(f"side-lobe gain m2={self.m2} exceeds main-lobe gain m1={self.m1}")
        if self.phi >= 2 * math.pi:
            raise ValueError(f"main-lobe width must be below 2*pi, got {self.phi}")

    @classmethod
    def from_units(cls, m1_db=0.0, m2_db=-20.0, phi_deg=30.0) -> "BeamPattern":
        return cls(m1=db_to_linear(m1_db), m2=db_to_linear(m2_db), phi=math.radians(phi_deg))

    @property
    def c1(self) -> float:
        return self.phi / (2.0 * math.pi)

    @property
    def c2(self) -> float:
        return 1.0 - self.c1

    @property
    def gains(self) -> tuple[float, float]:
        return (self.m1, self.m2)

    @property
    def probs(self) -> tuple[float, float]:
        return (self.c1, self.c2)

    @property
    def mean_gain(self) -> float:
        return self.c1 * self.m1 + self.c2 * self.m2


@dataclass(frozen=True)
class QamOrder:
    """Square K-QAM constellation."""

    k: int = 16
    _root: int = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if int(self.k) != self.k or self.k < 4:
            raise ValueError(f"QAM order must be an integer >= 4, got {self.k!r}")
        root = math.isqrt(int(self.k))
        if root * root != self.k:
            raise ValueError(f"QAM order must be a perfect square, got {self.k}")
        object.__setattr__(self, "k", int(self.k))
        object.__setattr__(self, "_root", root)

    @property
    def v(self) -> float:
        return (self._root - 1) / self._root

    @property
    def varsigma(self) -> float:
        return 3.0 / (self.k - 1)

    @property
    def ser_max(self) -> float:
        """SER at zero SINR, 2v - v^2."""
        return 2 * self.v - self.v**2


def from_paper_defaults(**overrides) -> tuple[NetworkParams, BeamPattern]:
    """Default deployment: lambda = 8/sqrt(3) km^-2, beta = 3.6, P_T = 0 dB,
    N0 = sigma_n^2 = -89 dBm, xi = -9 dB, N = 5, M1 = 0 dB, M2 = -20 dB,
    phi = 30 deg.  Keyword overrides are passed to :meth:`NetworkParams.from_units`.
    """
    return NetworkParams.from_units(**overrides), BeamPattern.from_units()
