"""Command-line front end: ``isac run | validate | reproduce | specfun-selftest``.

Configs are INI files with the sections ``[network]``, ``[beam]``, ``[sweep]``
and ``[run]``.  Keys carry their unit in the name (``p_t_db``,
``lambda_bs_per_km2``) so no value is ever ambiguous.
"""
from __future__ import annotations

import argparse
import configparser
import io
import math
import os
import sys
import time
import warnings
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace
from pathlib import Path

from . import analytic as an
from . import montecarlo as mc
from .model import BeamPattern, NetworkParams, QamOrder

EXIT_OK, EXIT_ENGINE, EXIT_CONFIG, EXIT_VALIDATION = 0, 1, 2, 3

NETWORK_KEYS = {
    "lambda_bs_per_km2": float, "beta": float, "p_t_db": float, "n0_dbm": float,
    "sigma_n2_dbm": float, "xi_db": float, "xi_interpretation": str, "gamma_db": float,
    "l_p": int, "n_l_cap_m2": float, "n_approx": int, "g_quad": int,
    "lambda_u_per_km2": float,
}
BEAM_KEYS = {"m1_db": float, "m2_db": float, "phi_deg": float}
SWEEP_KEYS = {"parameter": str, "values": str}
RUN_KEYS = {
    "engine": str, "metrics": str, "eps1_m2": float, "eps2_linear": float, "eps3": float,
    "qam_k": int, "n_trials": int, "seed": int, "output": str, "path": str, "timing": bool,
}
SECTIONS = {"network": NETWORK_KEYS, "beam": BEAM_KEYS, "sweep": SWEEP_KEYS, "run": RUN_KEYS}

# sweep name -> (section key it overrides, unit note)
SWEEPABLE = {
    "lambda_bs": "lambda_bs_per_km2", "beta": "beta", "gamma": "gamma_db", "l_p": "l_p",
    "p_t": "p_t_db", "eps1": "eps1_m2", "eps2": "eps2_linear", "eps3": "eps3",
}
ENGINES = ("analytic", "montecarlo", "both")

ERGODIC_CLI = (
    "ergodic_crlb", "ergodic_crlb_localizable", "ergodic_rms_crlb", "ergodic_mean_rms_crlb",
    "ergodic_rate", "ergodic_ser", "ergodic_crlb_given_sinr", "ergodic_rms_crlb_given_ser",
    "ergodic_rate_given_crlb", "ergodic_ser_given_crlb",
)
ALL_METRICS = an.METRICS + ERGODIC_CLI + ("pmf_participation",)
CSV_COLUMNS = ("sweep_param", "sweep_value", "metric", "engine", "value", "ci_half_width",
               "n_samples", "wall_time_s")


class ConfigError(ValueError):
    """Bad key, section or value in a config file (exit code 2)."""


@dataclass(frozen=True)
class RunConfig:
    network: dict
    beam: dict = field(default_factory=dict)
    sweep_param: str | None = None
    sweep_values: tuple = ()
    engine: str = "analytic"
    metrics: tuple = ("positioning",)
    eps1: float | None = 1.0
    eps2: float | None = 1.0
    eps3: float | None = 1e-3
    qam_k: int = 16
    n_trials: int = 10_000
    seed: int = 0
    output: str | None = None
    path: str = "defining_integral"
    timing: bool = False

    # -- derived objects -------------------------------------------------
    def point(self, value=None) -> "RunConfig":
        """The config at one sweep value."""
        if self.sweep_param is None or value is None:
            return self
        key = SWEEPABLE[self.sweep_param]
        if key in NETWORK_KEYS:
            return replace(self, network={**self.network, key: value})
        return replace(self, **{{"eps1_m2": "eps1", "eps2_linear": "eps2", "eps3": "eps3"}[key]: value})

    def params(self) -> NetworkParams:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            return NetworkParams.from_units(**self.network)

    def beam_pattern(self) -> BeamPattern:
        return BeamPattern.from_units(**self.beam)

    def qam(self) -> QamOrder:
        return QamOrder(self.qam_k)

    def options(self) -> an.EvalOptions:
        return an.EvalOptions(path=self.path)

    def check(self) -> None:
        """Build every derived object once so domain errors surface early."""
        if self.engine not in ENGINES:
            raise ConfigError(f"engine must be one of {ENGINES}, got {self.engine!r}")
        for m in self.metrics:
            if m not in ALL_METRICS:
                raise ConfigError(f"unknown metric {m!r}")
        if self.n_trials < 100:
            raise ConfigError("n_trials must be >= 100")
        for v in self.sweep_values or (None,):
            pt = self.point(v)
            try:
                pt.params(), pt.beam_pattern(), pt.qam(), pt.options()
                for name in ("eps1", "eps2", "eps3"):
                    e = getattr(pt, name)
                    if e is not None and not (e > 0 and math.isfinite(e)):
                        raise ValueError(f"{name} must be positive and finite, got {e}")
                if pt.eps3 is not None and not pt.eps3 < 1:
                    raise ValueError("eps3 must be below 1")
            except ValueError as exc:
                raise ConfigError(str(exc)) from exc

    def resolved_lines(self) -> list[str]:
        p, b = self.params(), self.beam_pattern()
        lines = [f"network.{k} = {getattr(p, k)!r}" for k in p.__dataclass_fields__]
        lines += [f"beam.{k} = {getattr(b, k)!r}" for k in ("m1", "m2", "phi")]
        lines.append(f"qam.k = {self.qam_k}")
        lines.append(f"sweep = {self.sweep_param} {list(self.sweep_values)!r}")
        for k in ("engine", "metrics", "eps1", "eps2", "eps3", "n_trials", "seed", "path"):
            lines.append(f"run.{k} = {getattr(self, k)!r}")
        return lines


def _to_bool(s: str) -> bool:
    v = s.strip().lower()
    if v in ("1", "true", "yes", "on"):
        return True
    if v in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {s!r}")


def parse_config(text: str) -> RunConfig:
    cp = configparser.ConfigParser(interpolation=None)
    cp.optionxform = str  # keep key case so typos are reported verbatim
    try:
        cp.read_string(text)
    except configparser.Error as exc:
        raise ConfigError(f"cannot parse config: {exc}") from exc
    data: dict[str, dict] = {s: {} for s in SECTIONS}
    for sec in cp.sections():
        if sec not in SECTIONS:
            raise ConfigError(f"unknown section [{sec}]")
        for key, raw in cp.items(sec):
            if key not in SECTIONS[sec]:
                raise ConfigError(f"unknown key {key!r} in [{sec}]")
            conv = SECTIONS[sec][key]
            try:
                data[sec][key] = _to_bool(raw) if conv is bool else conv(raw.strip())
            except ValueError as exc:
                raise ConfigError(f"bad value for {key!r}: {raw!r}") from exc

    run = data["run"]
    kw: dict = {}
    if data["sweep"]:
        name = data["sweep"].get("parameter")
        if name not in SWEEPABLE:
            raise ConfigError(f"unknown sweep parameter {name!r}; expected one of {sorted(SWEEPABLE)}")
        conv = int if name == "l_p" else float
        raw = data["sweep"].get("values", "")
        try:
            vals = tuple(conv(v) for v in raw.replace(",", " ").split())
        except ValueError as exc:
            raise ConfigError(f"bad sweep values {raw!r}") from exc
        if any(isinstance(v, float) and not math.isfinite(v) for v in vals):
            raise ConfigError("sweep values must be finite")
        kw.update(sweep_param=name, sweep_values=vals)
    for src, dst in (("eps1_m2", "eps1"), ("eps2_linear", "eps2"), ("eps3", "eps3"),
                     ("qam_k", "qam_k"), ("n_trials", "n_trials"), ("seed", "seed"),
                     ("output", "output"), ("path", "path"), ("timing", "timing"),
                     ("engine", "engine")):
        if src in run:
            kw[dst] = run[src]
    if "metrics" in run:
        kw["metrics"] = tuple(m.strip() for m in run["metrics"].split(",") if m.strip())
    cfg = RunConfig(network=data["network"], beam=data["beam"], **kw)
    cfg.check()
    return cfg


def load_config(path) -> RunConfig:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return parse_config(text)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class Row:
    metric: str
    engine: str
    value: float
    half_width: float | None = None
    n_samples: int | None = None
    wall_time: float | None = None


def _query(metric: str, pt: RunConfig) -> an.CoverageQuery:
    needs = an.metric_thresholds(metric)
    return an.CoverageQuery(metric, **{k: getattr(pt, k) for k in needs},
                            qam=pt.qam() if "eps3" in needs else None)


def analytic_rows(metric: str, pt: RunConfig) -> list[Row]:
    p, b, q, o = pt.params(), pt.beam_pattern(), pt.qam(), pt.options()
    if metric in an.METRICS:
        return [Row(metric, "analytic", an.coverage(_query(metric, pt), p, b, o))]
    if metric == "pmf_participation":
        levels, weights, p_unloc = an.participation_weights(p, o)
        rows = [Row("pmf_L0", "analytic", p_unloc)]
        return rows + [Row(f"pmf_L{l}", "analytic", float(w)) for l, w in zip(levels, weights)]
    e1, e2, e3 = pt.eps1, pt.eps2, pt.eps3
    val = {
        "ergodic_crlb": lambda: an.ergodic_crlb(p, b, o),
        "ergodic_crlb_localizable": lambda: an.ergodic_crlb(p, b, o, localizable_only=True),
        "ergodic_rms_crlb": lambda: math.sqrt(an.ergodic_crlb(p, b, o, localizable_only=True)),
        "ergodic_mean_rms_crlb": lambda: an.ergodic_crlb(p, b, o, True, power=0.5),
        "ergodic_rate": lambda: an.ergodic_rate(p, b, o),
        "ergodic_ser": lambda: an.ergodic_ser(p, b, q, o),
        "ergodic_crlb_given_sinr": lambda: an.ergodic_crlb_given_sinr(e2, p, b, o, True),
        "ergodic_rms_crlb_given_ser": lambda: math.sqrt(
            an.ergodic_crlb_given_ser(e3, q, p, b, o, True)),
        "ergodic_rate_given_crlb": lambda: an.ergodic_rate_given_crlb(e1, p, b, o),
        "ergodic_ser_given_crlb": lambda: an.ergodic_ser_given_crlb(e1, q, p, b, o),
    }[metric]()
    return [Row(metric, "analytic", val)]


def _sqrt_est(est: mc.EstimateWithCI) -> tuple[float, float]:
    root = math.sqrt(est.value)
    return root, (est.half_width / (2.0 * root) if root > 0 else 0.0)


def mc_rows(metric: str, pt: RunConfig, batch: mc.SnapshotBatch) -> list[Row]:
    def row(name, est, value=None, hw=None):
        return Row(name, "montecarlo", est.value if value is None else value,
                   est.half_width if hw is None else hw, est.n_samples)

    if metric in an.METRICS:
        return [row(metric, mc.coverage_from_batch(_query(metric, pt), batch))]
    if metric == "pmf_participation":
        lv = batch.l_participating
        out = []
        for l in [0] + list(range(3, pt.params().l_p + 1)):
            out.append(row(f"pmf_L{l}", mc._proportion(lv == l)))
        return out
    eb = mc.ergodic_from_batch
    e1, e2, e3 = pt.eps1, pt.eps2, pt.eps3
    if metric == "ergodic_crlb":
        return [row(metric, eb("crlb", batch))]
    if metric == "ergodic_crlb_localizable":
        return [row(metric, eb("crlb", batch, localizable_only=True))]
    if metric == "ergodic_rms_crlb":
        est = eb("crlb", batch, localizable_only=True)
        return [row(metric, est, *_sqrt_est(est))]
    if metric == "ergodic_mean_rms_crlb":
        return [row(metric, eb("crlb", batch, localizable_only=True, power=0.5))]
    if metric == "ergodic_rate":
        return [row(metric, eb("rate", batch))]
    if metric == "ergodic_ser":
        return [row(metric, eb("ser", batch))]
    if metric == "ergodic_crlb_given_sinr":
        return [row(metric, eb("crlb_given_sinr", batch, eps2=e2, localizable_only=True))]
    if metric == "ergodic_rms_crlb_given_ser":
        est = eb("crlb_given_ser", batch, eps3=e3, localizable_only=True)
        return [row(metric, est, *_sqrt_est(est))]
    if metric == "ergodic_rate_given_crlb":
        return [row(metric, eb("rate_given_crlb", batch, eps1=e1))]
    if metric == "ergodic_ser_given_crlb":
        return [row(metric, eb("ser_given_crlb", batch, eps1=e1))]
    raise ConfigError(f"unknown metric {metric!r}")


_NETWORK_SWEEPS = {k for k, v in SWEEPABLE.items() if v in NETWORK_KEYS}


def _threads() -> int:
    env = os.environ.get("ISAC_THREADS")
    return max(1, int(env)) if env else min(8, os.cpu_count() or 1)


def evaluate(cfg: RunConfig) -> list[tuple[object, Row]]:
    """All (sweep_value, Row) pairs in a fixed order."""
    values = cfg.sweep_values or (None,)
    engines = ("analytic", "montecarlo") if cfg.engine == "both" else (cfg.engine,)

    def timed(fn):
        t0 = time.perf_counter()
        rows = fn()
        dt = time.perf_counter() - t0
        return [replace(r, wall_time=dt) for r in rows]

    def analytic_point(v):
        pt = cfg.point(v)
        return [r for m in cfg.metrics for r in timed(lambda m=m: analytic_rows(m, pt))]

    out: dict[tuple, list[Row]] = {}
    if "analytic" in engines:
        with ThreadPoolExecutor(min(_threads(), len(values))) as pool:
            for v, rows in zip(values, pool.map(analytic_point, values)):
                out[(v, "analytic")] = rows

    if "montecarlo" in engines:
        # thresholds reuse one batch (common random numbers); network sweeps resample
        shared = None
        for v in values:
            pt = cfg.point(v)
            t0 = time.perf_counter()
            if shared is None or cfg.sweep_param in _NETWORK_SWEEPS:
                batch = mc.simulate_batch(pt.params(), pt.beam_pattern(), pt.qam(),
                                          cfg.n_trials, cfg.seed, threads=_threads())
                shared = batch
            sim_time = time.perf_counter() - t0
            rows = []
            for m in cfg.metrics:
                rows += [replace(r, wall_time=(r.wall_time or 0.0) + sim_time)
                         for r in timed(lambda m=m: mc_rows(m, pt, shared))]
            out[(v, "montecarlo")] = rows

    result = []
    for v in values:
        for e in engines:
            result += [(v, r) for r in out[(v, e)]]
    return result


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def render_csv(cfg: RunConfig, results, command: str = "run") -> str:
    buf = io.StringIO()
    buf.write(f"# isac {command}\n")
    for line in cfg.resolved_lines():
        buf.write(f"# {line}\n")
    buf.write(",".join(CSV_COLUMNS) + "\n")
    for v, r in results:
        cells = [cfg.sweep_param or "", _fmt(v), r.metric, r.engine, _fmt(float(r.value)),
                 _fmt(r.half_width), _fmt(r.n_samples),
                 f"{r.wall_time:.6f}" if cfg.timing and r.wall_time is not None else ""]
        buf.write(",".join(cells) + "\n")
    return buf.getvalue()


def _emit(text: str, output: str | None) -> None:
    if output:
        Path(output).parent.mkdir(parents=True, exist_ok=True)
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------
COVERAGE_TOL = 0.02
ERGODIC_TOL = 0.05


def validation_report(cfg: RunConfig, results) -> tuple[list[str], bool]:
    ana = {(v, r.metric): r for v, r in results if r.engine == "analytic"}
    worst: dict[str, tuple[float, bool]] = {}
    for v, r in results:
        if r.engine != "montecarlo" or (v, r.metric) not in ana:
            continue
        floor = ERGODIC_TOL if r.metric.startswith("ergodic") else COVERAGE_TOL
        diff = abs(ana[(v, r.metric)].value - r.value)
        ok = diff <= max(floor, 3.0 * (r.half_width or 0.0))
        base = "pmf_participation" if r.metric.startswith("pmf_L") else r.metric
        d0, ok0 = worst.get(base, (0.0, True))
        worst[base] = (max(d0, diff), ok0 and ok)
    lines = [f"{m}: max |analytic - montecarlo| = {d:.4g} -> {'PASS' if ok else 'FAIL'}"
             for m, (d, ok) in worst.items()]
    return lines, all(ok for _, ok in worst.values())


# ---------------------------------------------------------------------------
# presets
# ---------------------------------------------------------------------------
PRESETS = {
    "positioning-coverage": """
[network]
l_p = 20
[sweep]
parameter = eps1
values = 0.1, 0.2, 0.5, 1, 2, 5, 10
[run]
engine = both
metrics = positioning
n_trials = 100000
""",
    "pmf-L": """
[network]
beta = 4.6
l_p = 20
[sweep]
parameter = gamma
values = -15, -10, -5
[run]
engine = both
metrics = pmf_participation
n_trials = 100000
""",
    "comm-coverage": """
[sweep]
parameter = eps2
values = 0.1, 0.3162278, 1, 3.162278, 10, 31.62278, 100, 316.2278, 1000
[run]
engine = both
metrics = communication_sinr, communication_ser
eps3 = 0.001
n_trials = 100000
""",
    "joint-coverage": """
[network]
l_p = 20
[sweep]
parameter = lambda_bs
values = 1, 2, 5, 10
[run]
engine = both
metrics = joint_crlb_ser
eps1_m2 = 1
eps3 = 0.001
n_trials = 100000
""",
    "conditional-coverage": """
[network]
beta = 4.6
l_p = 20
[sweep]
parameter = lambda_bs
values = 1, 5, 10, 50
[run]
engine = both
metrics = cond_p_given_s, cond_s_given_p
eps1_m2 = 1
eps3 = 0.001
n_trials = 100000
""",
    "ergodic-crlb": """
[network]
beta = 4.6
l_p = 20
[sweep]
parameter = lambda_bs
values = 1, 2, 5, 10
[run]
engine = both
metrics = ergodic_rms_crlb, ergodic_mean_rms_crlb, ergodic_rms_crlb_given_ser
eps3 = 0.001
n_trials = 100000
""",
    "ergodic-ser": """
[network]
l_p = 20
[sweep]
parameter = lambda_bs
values = 1, 2, 5, 10
[run]
engine = both
metrics = ergodic_ser_given_crlb, ergodic_rate_given_crlb
eps1_m2 = 0.5
n_trials = 100000
""",
}


# ---------------------------------------------------------------------------
# specfun self-test
# ---------------------------------------------------------------------------
def specfun_selftest() -> list[tuple[str, bool, str]]:
    """Cheap internal cross-checks of the special-function layer."""
    import numpy as np
    from scipy import integrate, special

    from . import specfun as sf

    checks = []

    def add(name, ok, detail):
        checks.append((name, bool(ok), detail))

    add("gauss_q(0) = 1/2", abs(sf.gauss_q(0.0) - 0.5) < 1e-15, f"{float(sf.gauss_q(0.0))!r}")
    x = sf.inv_gauss_q(0.1)
    add("inv_gauss_q round trip", abs(sf.gauss_q(x) / 0.1 - 1) < 1e-10, f"x = {x!r}")
    ref = integrate.quad(lambda t: t**-1.5 * math.exp(-t), 0.3, 2.0, epsabs=0, epsrel=1e-13)[0]
    v = sf.gen_inc_gamma(-0.5, 0.3, 2.0)
    add("gen_inc_gamma(-0.5, 0.3, 2)", abs(v / ref - 1) < 1e-8, f"{float(v)!r} vs {float(ref)!r}")
    b, c = 1 - 2 / 3.6, 2 - 2 / 3.6
    ref = integrate.quad(lambda t: t ** (b - 1) * (1 - t) ** (c - b - 1) / (1 + t), 0, 1,
                         epsabs=0, epsrel=1e-13)[0] / special.beta(b, c - b)
    v = sf.hyp2f1_neg(b, c, -1.0)
    add("hyp2f1_neg at z = -1", abs(v / ref - 1) < 1e-8, f"{float(v)!r} vs {float(ref)!r}")
    v1 = sf.interference_exclusion_exponent(1.0, 3.6, 1.0)
    v2 = sf.interference_exclusion_exponent(1.0, 3.6, 1.0, method="quad")
    add("exclusion exponent closed vs quad", abs(v1 / v2 - 1) < 1e-7, f"{v1!r} vs {v2!r}")
    grid = np.linspace(0.01, 5, 100)
    gap = special.gammainc(5, 5 * grid) - sf.gamma_cdf_bound(grid, 5)
    add("gamma_cdf_bound vs exact CDF (N=5)", gap.min() > -1e-15 and gap.max() < 0.13,
        f"exact - bound in [{gap.min():.3g}, {gap.max():.3g}]")
    rule = sf.legendre_rule(32, 0.0, 1.0)
    add("legendre_rule exactness", abs(rule.integrate(lambda t: t**62) - 1 / 63) < 1e-12, "")
    e = sf.exp_invsq_integral(1.0, 0.5, 10.0, mode="exact")
    a = sf.exp_invsq_integral(1.0, 0.5, 10.0, mode="approx")
    add("exp_invsq approx within 2%", abs(a / e - 1) < 0.02, f"{a!r} vs {e!r}")
    return checks


# ---------------------------------------------------------------------------
# entry point
# ---------------------------------------------------------------------------
def _build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="isac", description="ISAC network coverage toolkit")
    sub = ap.add_subparsers(dest="cmd", required=True)
    r = sub.add_parser("run", help="evaluate a config and write CSV")
    r.add_argument("config")
    r.add_argument("--out", help="CSV path (overrides [run] output)")
    v = sub.add_parser("validate", help="compare both engines on the config grid")
    v.add_argument("config")
    v.add_argument("--out", help="CSV path for the raw rows")
    p = sub.add_parser("reproduce", help="run a named figure preset")
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--preset", choices=sorted(PRESETS))
    g.add_argument("--figure", choices=sorted(PRESETS))
    p.add_argument("--out", default="isac-out", help="output directory")
    p.add_argument("--engine", choices=ENGINES)
    p.add_argument("--n-trials", type=int)
    sub.add_parser("specfun-selftest", help="special-function sanity checks")
    return ap


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.cmd == "specfun-selftest":
            checks = specfun_selftest()
            for name, ok, detail in checks:
                print(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}".rstrip())
            return EXIT_OK if all(ok for _, ok, _ in checks) else EXIT_VALIDATION

        if args.cmd == "reproduce":
            name = args.preset or args.figure
            text = PRESETS[name]
            cfg = parse_config(text)
            if args.engine:
                cfg = replace(cfg, engine=args.engine)
            if args.n_trials:
                cfg = replace(cfg, n_trials=args.n_trials)
            cfg.check()
            out_dir = Path(args.out)
            out_dir.mkdir(parents=True, exist_ok=True)
            (out_dir / f"{name}.ini").write_text(text.lstrip())
            results = evaluate(cfg)
            (out_dir / f"{name}.csv").write_text(render_csv(cfg, results, f"reproduce {name}"))
            print(out_dir / f"{name}.csv")
            return EXIT_OK

        cfg = load_config(args.config)
        if args.cmd == "validate":
            cfg = replace(cfg, engine="both")
            results = evaluate(cfg)
            if args.out:
                _emit(render_csv(cfg, results, "validate"), args.out)
            lines, ok = validation_report(cfg, results)
            for line in lines:
                print(line)
            print("PASS" if ok else "FAIL")
            return EXIT_OK if ok else EXIT_VALIDATION

        results = evaluate(cfg)
        _emit(render_csv(cfg, results), args.out or cfg.output)
        return EXIT_OK
    except ConfigError as exc:
        print(f"isac: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except Exception as exc:  # noqa: BLE001 - any engine failure maps to exit 1
        print(f"isac: engine failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ENGINE


if __name__ == "__main__":
    sys.exit(main())
