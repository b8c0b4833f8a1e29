"""Config-driven command line front end.

One logical job per invocation; all output is written atomically and is
byte-identical across runs and thread settings.  Exit codes: 0 success,
2 configuration/validation error, 3 numerical-accuracy failure.
"""

import argparse
import json
import math
import os
import sys
import tempfile

import numpy as np

from . import estimator, lattice
from .circles import ANNULUS, GAUSSIAN, CircleFamily, validate_family
from .errors import AccuracyError, CircleLabError, ContractError, DomainError, ValidationError
from .estimator import Schedule, default_schedule
from .measures import measure_from_dict, measure_to_dict
from .specfun import bessel_i0_scaled, bessel_j0, bessel_j1, u_ratio

SCHEMA_VERSION = 1

COMMANDS = ("bessel", "intensity", "shelling", "sum2sq", "poisson-check",
            "ortho", "detect", "validate-family")

_FAMILY_NAMES = {"gaussian": GAUSSIAN, "annulus": ANNULUS}


def _fmt(x):
    """Shortest round-trip decimal representation."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    return repr(float(x))


def _write_atomic(path, lines):
    d = os.path.dirname(os.path.abspath(path)) or "."
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".circlelab-")
    try:
        with os.fdopen(fd, "w", newline="\n") as fh:
            for line in lines:
                fh.write(line + "\n")
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _emit(path, fmt, header, rows):
    """rows: list of dicts keyed by header entries, already formatted strings."""
    if fmt == "csv":
        lines = [",".join(header)]
        lines += [",".join(row[h] for h in header) for row in rows]
    else:  # structured-records: one JSON object per line
        lines = [json.dumps({h: row[h] for h in header}, sort_keys=True)
                 for row in rows]
    if path:
        _write_atomic(path, lines)
    else:
        for line in lines:
            print(line)


def _resolve_threads(args):
    raw = args.threads if args.threads is not None \
        else os.environ.get("CIRCLE_LAB_THREADS", "1")
    n = int(raw)
    if n < 1:
        raise ContractError("--threads must be >= 1")
    # execution is sequential with fixed-order reductions; the flag is
    # accepted so schedulers can pass it without changing any output
    return n


def _load_config(args):
    cfg = {}
    if args.config:
        try:
            with open(args.config) as fh:
                cfg = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise ContractError(f"unreadable config {args.config}: {exc}")
        version = cfg.get("schema_version")
        if version != SCHEMA_VERSION:
            raise ContractError(f"config field schema_version must be {SCHEMA_VERSION}, got {version!r}")
    # direct flags override config values
    for key in ("r", "family", "tol", "out", "format", "threshold"):
        val = getattr(args, key, None)
        if val is not None:
            cfg[key] = val
    if getattr(args, "schedule", None):
        cfg["schedule"] = [int(s) for s in args.schedule.split(",")]
    return cfg


def _family_kind(cfg):
    name = cfg.get("family", "gaussian")
    if name not in _FAMILY_NAMES:
        raise ContractError(f"config field family must be one of {sorted(_FAMILY_NAMES)}, got {name!r}")
    return _FAMILY_NAMES[name]


def _schedule(cfg, kind):
    tol = float(cfg.get("tol", 1e-9))
    if "schedule" in cfg:
        return Schedule(tuple(cfg["schedule"]), tol)
    return default_schedule(kind, tol)


def _build_measure(cfg, kind, schedule):
    mdesc = cfg.get("measure")
    if mdesc is None:
        raise ContractError("config field measure is required for this command")
    if mdesc.get("type") == "lattice":
        basis = np.asarray(mdesc["basis"], dtype=float)
        n_max = max(schedule.n_values)
        power = 2 if kind == GAUSSIAN else 4
        cutoff = float(mdesc.get("max_sq_norm",
                                 n_max ** power * math.log(1e16) / math.pi ** 2))
        return lattice.shelling_measure(lattice.Lattice(basis), cutoff)
    return measure_from_dict(mdesc)


def _series_rows(est):
    rows = []
    for n, val, err in est.series.entries:
        rows.append({"n": str(n), "re": _fmt(val.real), "im": _fmt(val.imag),
                     "quad_error": _fmt(err)})
    rows.append({"n": "limit", "re": _fmt(est.limit.real),
                 "im": _fmt(est.limit.imag),
                 "quad_error": _fmt(est.uncertainty)})
    return rows


def cmd_bessel(args, cfg):
    fns = {"j0": bessel_j0, "j1": bessel_j1, "i0e": bessel_i0_scaled, "u": u_ratio}
    if args.fn not in fns:
        raise ContractError(f"--fn must be one of {sorted(fns)}")
    value = fns[args.fn](args.at)
    print(_fmt(value))
    if cfg.get("out"):
        _emit(cfg["out"], cfg.get("format", "csv"), ["fn", "t", "value"],
              [{"fn": args.fn, "t": _fmt(args.at), "value": _fmt(value)}])
    return 0


def cmd_intensity(args, cfg):
    kind = _family_kind(cfg)
    schedule = _schedule(cfg, kind)
    r = float(cfg["r"])
    mu = _build_measure(cfg, kind, schedule)
    est = estimator.circle_intensity(mu, r, kind, schedule)
    print(f"intensity(r={_fmt(r)}) = {_fmt(est.limit.real)} "
          f"+- {_fmt(est.uncertainty)}")
    _emit(cfg.get("out"), cfg.get("format", "csv"),
          ["n", "re", "im", "quad_error"], _series_rows(est))
    return 0


def cmd_detect(args, cfg):
    kind = _family_kind(cfg)
    schedule = _schedule(cfg, kind)
    r = float(cfg["r"])
    threshold = float(cfg.get("threshold", 1e-3))
    mu = _build_measure(cfg, kind, schedule)
    present, est = estimator.detect_circle(mu, r, schedule, threshold, kind)
    print(f"circle r={_fmt(r)}: {'present' if present else 'absent'} "
          f"(|limit|={_fmt(abs(est.limit))}, uncertainty={_fmt(est.uncertainty)})")
    rows = _series_rows(est)
    rows.append({"n": "present", "re": str(int(present)), "im": "0.0",
                 "quad_error": _fmt(threshold)})
    _emit(cfg.get("out"), cfg.get("format", "csv"),
          ["n", "re", "im", "quad_error"], rows)
    return 0


def cmd_shelling(args, cfg):
    basis = np.asarray(cfg.get("basis", [[1.0, 0.0], [0.0, 1.0]]), dtype=float)
    L = lattice.Lattice(basis)
    schedule = _schedule(cfg, GAUSSIAN)
    k = float(cfg["k"] if "k" in cfg else args.k)
    report, est = lattice.verify_lattice_shelling(L, k, schedule)
    print(str(report))
    _emit(cfg.get("out"), cfg.get("format", "csv"),
          ["k", "count", "dual_sum", "uncertainty", "difference"],
          [{"k": _fmt(report.k), "count": str(report.lhs_multiplicity),
            "dual_sum": _fmt(report.rhs_limit),
            "uncertainty": _fmt(report.rhs_uncertainty),
            "difference": _fmt(report.difference)}])
    return 0


def cmd_sum2sq(args, cfg):
    max_m = int(cfg.get("max", args.max))
    sieve = lattice.r2_sieve(max_m)
    rows = []
    for m in range(0, max_m + 1):
        direct = lattice.r2(m)
        div = int(sieve[m]) if m >= 1 else 1
        rows.append({"m": str(m), "r2": str(direct), "r2_divisor": str(div)})
        if direct != div:
            raise AccuracyError(f"sum2sq mismatch at m={m}: {direct} vs {div}")
    _emit(cfg.get("out"), cfg.get("format", "csv"), ["m", "r2", "r2_divisor"], rows)
    print(f"r2 agreement verified for 0 <= m <= {max_m}")
    return 0


def cmd_poisson(args, cfg):
    kind = _family_kind(cfg)
    fam = CircleFamily(kind, float(cfg.get("r", 1.0)), int(cfg.get("n", args.n)))
    report = estimator.poisson_selfcheck(fam)
    print(f"poisson-check {cfg.get('family', 'gaussian')} r={_fmt(fam.r)} n={fam.n}: "
          f"rel_diff={_fmt(report.rel_diff)}")
    _emit(cfg.get("out"), cfg.get("format", "csv"),
          ["spectral_sum", "spatial_sum", "rel_diff"],
          [{"spectral_sum": _fmt(report.spectral_sum),
            "spatial_sum": _fmt(report.spatial_sum),
            "rel_diff": _fmt(report.rel_diff)}])
    return 0


def cmd_ortho(args, cfg):
    r = float(cfg.get("r", 1.0))
    rp = float(cfg.get("r_prime", args.rp))
    n = int(cfg.get("n", args.n))
    tol = float(cfg.get("tol", 1e-8))
    value = estimator.j0_orthogonality(r, rp, n, tol)
    print(_fmt(value))
    if cfg.get("out"):
        _emit(cfg["out"], cfg.get("format", "csv"),
              ["r", "r_prime", "n", "value"],
              [{"r": _fmt(r), "r_prime": _fmt(rp), "n": str(n),
                "value": _fmt(value)}])
    return 0


def cmd_validate_family(args, cfg):
    kind = _family_kind(cfg)
    r = float(cfg["r"])
    schedule = _schedule(cfg, kind)
    radii = cfg.get("sample_radii")
    if radii is None:
        grid = np.concatenate([[0.0, r], np.linspace(0.15 * r, 3.0 * r, 48) + 0.17 * r])
        radii = sorted(set(float(x) for x in grid if abs(x - r) > 0.15 or x == r))
    report = validate_family(kind, r, radii, schedule.n_values)
    print(str(report))
    _emit(cfg.get("out"), cfg.get("format", "csv"),
          ["kind", "r", "passed", "c1_max_dev", "envelope_A", "envelope_margin"],
          [{"kind": report.kind, "r": _fmt(report.r),
            "passed": str(int(report.passed)),
            "c1_max_dev": _fmt(report.c1_max_dev),
            "envelope_A": _fmt(report.envelope_bound_A),
            "envelope_margin": _fmt(report.envelope_margin)}])
    return 0 if report.passed else 3


_HANDLERS = {
    "bessel": cmd_bessel,
    "intensity": cmd_intensity,
    "shelling": cmd_shelling,
    "sum2sq": cmd_sum2sq,
    "poisson-check": cmd_poisson,
    "ortho": cmd_ortho,
    "detect": cmd_detect,
    "validate-family": cmd_validate_family,
}


def build_parser():
    p = argparse.ArgumentParser(prog="circle-lab",
                                description=__doc__.splitlines()[0])
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("--config", help="JSON run configuration (primary interface)")
    p.add_argument("--r", type=float, help="target circle radius")
    p.add_argument("--family", choices=sorted(_FAMILY_NAMES))
    p.add_argument("--schedule", help="comma-separated n values")
    p.add_argument("--tol", type=float, help="per-n quadrature tolerance")
    p.add_argument("--out", help="output file path (stdout if omitted)")
    p.add_argument("--format", choices=("csv", "records"))
    p.add_argument("--threads", help="accepted for schedulers; outputs never depend on it")
    p.add_argument("--threshold", type=float, help="detection threshold")
    p.add_argument("--fn", help="bessel: one of j0, j1, i0e, u")
    p.add_argument("--at", type=float, help="bessel: evaluation point")
    p.add_argument("--max", type=int, default=100, help="sum2sq: largest m")
    p.add_argument("--n", type=int, default=8, help="ortho/poisson-check: family index")
    p.add_argument("--rp", type=float, default=1.0, help="ortho: second radius r'")
    p.add_argument("--k", type=float, default=1.0, help="shelling: squared norm k")
    return p


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        _resolve_threads(args)
        cfg = _load_config(args)
        return _HANDLERS[args.command](args, cfg)
    except (ContractError, DomainError, ValueError, KeyError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except (AccuracyError, ValidationError) as exc:
        print(f"accuracy failure in {args.command}: {exc}", file=sys.stderr)
        return 3
    except CircleLabError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def roundtrip_measure(mu):
    """Re-emit and re-ingest a measure through its file representation."""
    return measure_from_dict(json.loads(json.dumps(measure_to_dict(mu))))


if __name__ == "__main__":
    sys.exit(main())
