"""Command-line runner: seeded verification suites with CSV or JSON reports.

Every subcommand emits rows with the fixed columns
``scenario,n,N,check,lhs,rhs,ratio,tolerance,verdict`` and exits 0 iff all
verdicts pass. ``ORLICZ_JACKSON_THREADS`` sets the default number of worker
threads for the scenario x n grid; results do not depend on it.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
import warnings
import zlib
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .orlicz import check_unit_section
from .presets import SCENARIOS, power_majorant, scenario, scenario_from_config, with_tau
from .smoothness import ModulusProfile, averaged_modulus
from .spectral import Spectrum, best_approximation, psi_derivative, psi_integral, random_spectrum
from .theorems import (ClassSpec, Condition12Warning, jackson_verify, majorant_condition, sharp_constant,
                       sharpness_ratio, verify_bernstein_lower, verify_projection_upper, width_value)

COLUMNS = ["scenario", "n", "N", "check", "lhs", "rhs", "ratio", "tolerance", "verdict"]
COMMANDS = ["norm", "modulus", "jackson", "widths", "majorant-check", "verify-all"]
THREADS_ENV = "ORLICZ_JACKSON_THREADS"


class ConfigError(ValueError):
    def __init__(self, path, message):
        super().__init__(f"{path}: {message}")
        self.path = path


@dataclass
class RunConfig:
    command: str
    scenarios: list = field(default_factory=list)
    n: list = field(default_factory=lambda: [1, 2, 4])
    tau: float | None = None
    samples: int = 100
    seed: int = 0
    out: str = "csv"
    output: str | None = None
    spectrum: str | None = None
    r: float | None = None
    threads: int = 1

    def validate(self):
        if self.command not in COMMANDS:
            raise ConfigError("command", f"must be one of {COMMANDS}")
        if not self.scenarios:
            raise ConfigError("scenario", "no scenario selected")
        for i, s in enumerate(self.scenarios):
            if isinstance(s, str) and s not in SCENARIOS and not Path(s).is_file():
                raise ConfigError(f"scenario[{i}]", f"unknown scenario {s!r}")
        if self.command != "majorant-check" and self.command != "norm":
            if not self.n:
                raise ConfigError("n", "empty n-list")
            for i, v in enumerate(self.n):
                if not isinstance(v, int) or v < 1:
                    raise ConfigError(f"n[{i}]", f"must be an integer >= 1, got {v!r}")
        if self.tau is not None and not self.tau > 0:
            raise ConfigError("tau", "must be positive")
        if not isinstance(self.samples, int) or self.samples < 1:
            raise ConfigError("samples", "must be an integer >= 1")
        if self.out not in ("csv", "json"):
            raise ConfigError("out", "must be csv or json")
        if self.threads < 1:
            raise ConfigError("threads", "must be >= 1")
        return self


# ---------------------------------------------------------------- rows


def _row(sc, n, N, check, lhs, rhs, tol, verdict, detail=None):
    ratio = lhs / rhs if rhs not in (0, 0.0) and math.isfinite(rhs) else math.nan
    return {"scenario": sc, "n": n, "N": N, "check": check, "lhs": float(lhs), "rhs": float(rhs),
            "ratio": float(ratio), "tolerance": float(tol), "verdict": bool(verdict), "detail": detail}


def _error_row(sc, n, check, exc):
    return _row(sc, n, "", check, math.nan, math.nan, math.nan, False, {"error": f"{type(exc).__name__}: {exc}"})


def _rng(seed, name, n, suite):
    return np.random.default_rng([seed, zlib.crc32(name.encode()), n, zlib.crc32(suite.encode())])


def _guard(name, n, check, fn):
    """Run a suite; a numerical failure becomes one failing row."""
    try:
        return fn()
    except Exception as exc:  # recorded per row, never aborts the batch
        return [_error_row(name, n, check, exc)]


def _spectra(cfg, rng, degree=12):
    if cfg.spectrum:
        return [Spectrum.from_json(cfg.spectrum)]
    return [random_spectrum(rng, degree, support=int(rng.integers(1, 10))) for _ in range(cfg.samples)]


# ---------------------------------------------------------------- suites


def suite_norm(sc, cfg):
    rng = _rng(cfg.seed, sc.name, 0, "norm")
    rows = []
    for i, f in enumerate(_spectra(cfg, rng, degree=8)):
        lux = sc.space.luxemburg(f)
        nrm = sc.space.norm(f)
        ok = lux <= nrm + 1e-7 and nrm <= 2 * lux + 1e-7
        rows.append(_row(sc.name, "", "", f"norm-sandwich[{i}]", nrm, lux, 1e-7, ok))
    return rows


def suite_modulus(sc, n, cfg):
    rng = _rng(cfg.seed, sc.name, n, "modulus")
    rows = []
    u = sc.tau / n
    for i, f in enumerate(_spectra(cfg, rng)):
        prof = ModulusProfile(f, sc.phi, sc.space, u)
        om = averaged_modulus(f, sc.phi, sc.weight, u, sc.space, profile=prof)
        w = prof(u)
        rows.append(_row(sc.name, n, "", f"averaged<=modulus[{i}]", om, w, 1e-9, om <= w * (1 + 1e-9) + 1e-12))
    return rows


def suite_jackson(sc, n, cfg, per_sample=True):
    spec = ClassSpec.from_scenario(sc, n=n)
    rng = _rng(cfg.seed, sc.name, n, "jackson")
    rows, worst, bad = [], 0.0, 0
    for i, f in enumerate(_spectra(cfg, rng)):
        rep = jackson_verify(f, spec)
        if per_sample:
            rows.append(_row(sc.name, n, "", f"jackson[{i}]", rep.E_n, rep.rhs, 1e-7, rep.verdict, rep.as_dict()))
        worst = max(worst, rep.ratio)
        bad += not rep.verdict
    if not per_sample:
        rows.append(_row(sc.name, n, "", "jackson-violations", bad, 0, 0, bad == 0,
                         {"samples": cfg.samples, "max_ratio": worst}))
    return rows


def suite_sharpness(sc, n, cfg):
    spec = ClassSpec.from_scenario(sc, n=n)
    res = spec.I_n(n)
    ratio_ext = jackson_verify(Spectrum({n: 1.0}), spec).ratio_extremal
    expected = res.value / res.reference
    rows = [_row(sc.name, n, "", "extremal-ratio", ratio_ext, expected, 1e-6,
                 abs(ratio_ext - expected) <= 1e-6, {"condition12": res.attained_at_n, "argmin_k": res.argmin_k})]
    if res.attained_at_n:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", Condition12Warning)
            c = sharp_constant(spec)
        s = sharpness_ratio(spec)
        rows.append(_row(sc.name, n, "", "sharpness", s, c, 1e-6, abs(s / c - 1) <= 1e-6))
    return rows


def suite_widths(sc, n, cfg, majorant=False):
    spec = ClassSpec.from_scenario(sc, n=n, majorant=majorant)
    tag = "maj-" if majorant else ""
    rng = _rng(cfg.seed, sc.name, n, tag + "widths")
    rows = []
    for N in (2 * n - 1, 2 * n):
        w = width_value(spec, n, N)
        rows.append(_row(sc.name, n, N, tag + "width-sandwich", w.lower, w.upper, 1e-12,
                         w.lower <= w.upper * (1 + 1e-12), w.as_dict()))
        if w.exact is not None:
            rows.append(_row(sc.name, n, N, tag + "width-exact", w.lower, w.upper, 1e-6,
                             abs(w.upper - w.lower) <= 1e-6 * w.upper))
    b = verify_bernstein_lower(spec, n, samples=cfg.samples, rng=rng)
    rows.append(_row(sc.name, n, 2 * n + 1, tag + "bernstein-ball", b.violations, 0, 1e-6, b.violations == 0,
                     {"radius": b.radius, "max_margin": b.max_margin, "samples": b.samples}))
    b2 = verify_bernstein_lower(spec, n, samples=cfg.samples, radius_scale=1.5, rng=rng)
    rows.append(_row(sc.name, n, 2 * n + 1, tag + "bernstein-strict", b2.violations, 1, 1e-6, b2.violations >= 1,
                     {"radius": b2.radius, "max_margin": b2.max_margin, "samples": b2.samples}))
    p = verify_projection_upper(spec, n, samples=cfg.samples, rng=rng)
    rows.append(_row(sc.name, n, 2 * n - 1, tag + "projection", p.sup_E, p.upper, 1e-6,
                     p.sup_E <= p.upper * (1 + 1e-6), {"extremal_ratio": p.extremal_ratio, "samples": p.samples}))
    return rows


def suite_majorant(sc, cfg):
    omega = power_majorant(cfg.r) if cfg.r is not None else sc.majorant
    if omega is None:
        raise ValueError(f"scenario {sc.name!r} has no majorant; pass --r")
    m = majorant_condition(sc.phi, sc.weight, omega)
    detail = {"omega": omega.name, "worst_xi": m.worst_xi, "worst_u": m.worst_u}
    return [
        _row(sc.name, "", "", "majorant-condition", m.worst_excess, 0.0, 1e-9, m.holds, detail),
        _row(sc.name, "", "", "majorant-slice", m.slice_error, 0.0, 1e-9, m.slice_error <= 1e-9),
    ]


def suite_calculus(sc, n, cfg):
    """Normalization of the conjugates and the psi round trip."""
    rng = _rng(cfg.seed, sc.name, n, "calculus")
    ks = range(-4 * n, 4 * n + 1)
    ok, report = check_unit_section(sc.space.conj, ks)
    rows = [_row(sc.name, n, "", "unit-section", len(report), 0, 1e-9, ok, {k: v for k, v in report.items()})]
    f = random_spectrum(rng, 4 * n, zero_mean=True)
    back = psi_integral(psi_derivative(f, sc.psi), sc.psi)
    err = max(abs(back[k] - v) / abs(v) for k, v in f.coeffs.items())
    rows.append(_row(sc.name, n, "", "psi-roundtrip", err, 0.0, 1e-12, err <= 1e-12))
    E = best_approximation(f, n, sc.space)
    worst = -math.inf
    for _ in range(20):
        t = random_spectrum(rng, n - 1, support=int(rng.integers(1, 2 * n))) if n > 1 else Spectrum({0: rng.normal()})
        worst = max(worst, E - sc.space.norm(f - t))
    rows.append(_row(sc.name, n, "", "best-approximation", E, E - worst, 1e-9, worst <= 1e-9))
    return rows


def _widths_cell(sc, n, cfg):
    rows = _guard(sc.name, n, "widths", lambda: suite_widths(sc, n, cfg))
    if sc.majorant is not None and sc.tau <= sc.phi.monotone_end:
        rows += _guard(sc.name, n, "maj-widths", lambda: suite_widths(sc, n, cfg, majorant=True))
    return rows


def _verify_all_cell(sc, n, cfg):
    rows = []
    rows += _guard(sc.name, n, "calculus", lambda: suite_calculus(sc, n, cfg))
    rows += _guard(sc.name, n, "jackson", lambda: suite_jackson(sc, n, cfg, per_sample=False))
    rows += _guard(sc.name, n, "sharpness", lambda: suite_sharpness(sc, n, cfg))
    rows += _widths_cell(sc, n, cfg)
    return rows


# ---------------------------------------------------------------- driver


def load_scenario(ref, tau=None):
    if isinstance(ref, dict):
        sc = scenario_from_config(ref)
    elif ref in SCENARIOS:
        sc = scenario(ref)
    else:
        sc = scenario_from_config(json.loads(Path(ref).read_text()))
    return with_tau(sc, tau) if tau is not None else sc


def run(cfg: RunConfig) -> tuple[list[dict], int]:
    cfg.validate()
    scs = [load_scenario(s, cfg.tau) for s in cfg.scenarios]
    cmd = cfg.command
    tasks = []
    for sc in scs:
        if cmd == "norm":
            tasks.append((sc.name, 0, "norm", lambda sc=sc: suite_norm(sc, cfg)))
        elif cmd == "majorant-check":
            tasks.append((sc.name, 0, "majorant", lambda sc=sc: suite_majorant(sc, cfg)))
        else:
            for n in cfg.n:
                fn = {
                    "modulus": lambda sc=sc, n=n: suite_modulus(sc, n, cfg),
                    "jackson": lambda sc=sc, n=n: suite_jackson(sc, n, cfg),
                    "widths": lambda sc=sc, n=n: _widths_cell(sc, n, cfg),
                    "verify-all": lambda sc=sc, n=n: _verify_all_cell(sc, n, cfg),
                }[cmd]
                tasks.append((sc.name, n, cmd, fn))
        if cmd == "verify-all" and sc.majorant is not None:
            tasks.append((sc.name, 0, "majorant", lambda sc=sc: suite_majorant(sc, cfg)))

    def go(task):
        name, n, check, fn = task
        return _guard(name, n, check, fn)

    if cfg.threads > 1:
        with ThreadPoolExecutor(cfg.threads) as pool:
            chunks = list(pool.map(go, tasks))
    else:
        chunks = [go(t) for t in tasks]
    rows = [r for chunk in chunks for r in chunk]
    rows.sort(key=_sort_key)
    code = 0 if all(r["verdict"] for r in rows) else 1
    return rows, code


def _sort_key(r):
    n = r["n"] if isinstance(r["n"], int) else -1
    N = r["N"] if isinstance(r["N"], int) else -1
    check = r["check"]
    base, _, idx = check.partition("[")
    return (r["scenario"], n, base, int(idx.rstrip("]")) if idx else -1, N)


def _fmt(v):
    if isinstance(v, bool):
        return "pass" if v else "fail"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def render(rows, out) -> str:
    if out == "json":
        return json.dumps({"columns": COLUMNS, "rows": rows}, sort_keys=True, indent=1, default=str) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(COLUMNS)
    for r in rows:
        w.writerow([_fmt(r[c]) for c in COLUMNS])
    return buf.getvalue()


def _int_list(text):
    text = text.strip()
    if not text:
        return []
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a comma-separated integer list: {text!r}") from None


def build_parser():
    ap = argparse.ArgumentParser(prog="orlicz-jackson", description=__doc__.splitlines()[0])
    ap.add_argument("--config", help="JSON file with RunConfig fields; flags override it")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", action="append", help="registry name or scenario JSON file (repeatable)")
    common.add_argument("--n", type=_int_list, help="comma-separated list, e.g. 1,2,4")
    common.add_argument("--tau", type=float)
    common.add_argument("--samples", type=int)
    common.add_argument("--seed", type=int)
    common.add_argument("--out", choices=["csv", "json"])
    common.add_argument("--output", help="write the report here instead of stdout")
    common.add_argument("--spectrum", help="inline JSON records [{k, re, im}, ...] or a file")
    common.add_argument("--r", type=float, help="majorant-check: test Omega(u) = u**r")
    common.add_argument("--threads", type=int)
    sub = ap.add_subparsers(dest="command", required=True)
    for c in COMMANDS:
        sub.add_parser(c, parents=[common])
    return ap


def config_from_args(argv) -> RunConfig:
    args = build_parser().parse_args(argv)
    base = {}
    if args.config:
        base = json.loads(Path(args.config).read_text())
        if not isinstance(base, dict):
            raise ConfigError("config", "must be a JSON object")
        if "scenario" in base:
            s = base.pop("scenario")
            base["scenarios"] = s if isinstance(s, list) else [s]
        base.pop("command", None)
    flags = {k: v for k, v in vars(args).items() if v is not None and k not in ("config", "command")}
    if "scenario" in flags:
        flags["scenarios"] = flags.pop("scenario")
    merged = {**base, **flags}
    merged.setdefault("threads", int(os.environ.get(THREADS_ENV, "1")))
    if "scenarios" not in merged and args.command in ("verify-all", "majorant-check"):
        merged["scenarios"] = sorted(n for n in SCENARIOS
                                     if args.command == "verify-all" or scenario(n).majorant is not None)
    allowed = set(RunConfig.__dataclass_fields__)
    unknown = set(merged) - allowed
    if unknown:
        raise ConfigError(sorted(unknown)[0], "unknown field")
    return RunConfig(command=args.command, **merged)


def main(argv=None) -> int:
    try:
        cfg = config_from_args(sys.argv[1:] if argv is None else argv)
        rows, code = run(cfg)
    except ConfigError as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return 2
    text = render(rows, cfg.out)
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
