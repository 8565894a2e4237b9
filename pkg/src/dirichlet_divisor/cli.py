"""Command-line front end.

    dirichlet-divisor delta-table --xmin 1 --xmax 100 --step 1 --format csv
    dirichlet-divisor verify-theorem1 --xmax 2000
    dirichlet-divisor euler-sum --fn inv --a 10.5 --b 200.5
    dirichlet-divisor afe-sweep --s 0.5,2 --x 100,10000 --format json

Exit codes: 0 success, 1 verification breach, 2 usage error, 3 I/O error.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import io
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from . import dsum, remainder, zeta_afe
from .arith import build_divisor_sieve
from .errors import DivisorError, RangeError
from .quadrature import QuadConfig

OK, BREACH, USAGE, IO_ERROR = 0, 1, 2, 3

DEFAULT_SIEVE_LIMIT = 10**6
POLE_MARGIN = 1e-3

DELTA_FIELDS = ["x", "D", "main_term", "delta", "A", "B", "residual"]
AFE_FIELDS = ["s", "x", "E1", "E2", "hyperbola_residual", "theorem3_residual", "scaled_residual"]


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    xmin: float = 1.0
    xmax: float = 100.0
    step: float = 1.0
    s_values: list = field(default_factory=list)
    x_values: list = field(default_factory=list)
    tol: float = 1e-12
    output_path: str | None = None
    format: str = "csv"
    sieve_limit: int = DEFAULT_SIEVE_LIMIT
    tail_mode: str = dsum.SAWTOOTH
    fn: str = "one"
    decomposition_only: bool = False

    def __post_init__(self):
        if not self.tol > 0:
            raise UsageError("--tol must be positive")
        if self.format not in ("csv", "json"):
            raise UsageError("--format must be csv or json")
        if self.step <= 0:
            raise UsageError("--step must be positive")
        if self.sieve_limit < 1:
            raise UsageError("--sieve-limit must be >= 1")


def _format_value(v):
    if isinstance(v, (bool, np.bool_)):
        return str(bool(v))
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return format(float(v), ".17g")


def write_rows(rows, fields, fmt, path):
    """Emit rows as CSV (17 significant digits, LF endings) or a JSON array."""
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(fields)
        for row in rows:
            writer.writerow([_format_value(row[k]) for k in fields])
        text = buf.getvalue()
    else:
        plain = [{k: (int(row[k]) if isinstance(row[k], (int, np.integer)) else float(row[k])) for k in fields}
                 for row in rows]
        text = json.dumps(plain, indent=1) + "\n"
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="\n") as fh:
            fh.write(text)


def _grid(cfg):
    if cfg.xmax < cfg.xmin:
        return []
    count = int(math.floor((cfg.xmax - cfg.xmin) / cfg.step + 1e-9)) + 1
    return [cfg.xmin + i * cfg.step for i in range(count)]


def _sieve_for(cfg, top):
    if math.floor(top) > cfg.sieve_limit:
        raise RangeError(f"x={top} exceeds sieve limit {cfg.sieve_limit}; raise --sieve-limit")
    return build_divisor_sieve(max(1, math.floor(top)))


def cmd_delta_table(cfg: RunConfig) -> int:
    if cfg.xmin < 1:
        raise UsageError("--xmin must be >= 1")
    xs = _grid(cfg)
    rows = []
    if xs:
        sieve = _sieve_for(cfg, xs[-1])
        for x in xs:
            x = int(x) if float(x).is_integer() else x
            rows.append(dataclasses.asdict(remainder.decompose(x, sieve, cfg.tol)))
    write_rows(rows, DELTA_FIELDS, cfg.format, cfg.output_path)
    worst = max((abs(r["residual"]) for r in rows), default=0.0)
    return OK if worst <= 1e-6 else BREACH


def cmd_verify_theorem1(cfg: RunConfig) -> int:
    xmax = int(cfg.xmax)
    if xmax < 1:
        raise UsageError("--xmax must be >= 1")
    sieve = _sieve_for(cfg, xmax)
    status = OK
    if not cfg.decomposition_only:
        dev = {remainder.COTANGENT: 0.0, remainder.PARTIAL_FRACTION: 0.0}
        for x in range(2, xmax + 1):
            exact = remainder.A_of(x)
            for mode in dev:
                dev[mode] = max(dev[mode], abs(remainder.A_trig_integer(x, mode) - exact))
        limits = {remainder.COTANGENT: 1e-10, remainder.PARTIAL_FRACTION: 1e-6}
        for mode, d in dev.items():
            passed = d <= limits[mode]
            status = status if passed else BREACH
            print(f"A_trig[{mode}] max deviation {d:.3e} (limit {limits[mode]:g}) {'PASS' if passed else 'FAIL'}")
    worst = 0.0
    for x in range(1, xmax + 1):
        worst = max(worst, abs(remainder.decompose(x, sieve, cfg.tol).residual))
    passed = worst <= 1e-6
    print(f"decomposition max |residual| {worst:.3e} (limit 1e-06) {'PASS' if passed else 'FAIL'}")
    return status if passed else BREACH


def cmd_euler_sum(cfg: RunConfig) -> int:
    a, b = cfg.xmin, cfg.xmax
    if not 0 < a <= b:
        raise UsageError(f"need 0 < a <= b, got a={a}, b={b}")
    if cfg.fn not in dsum.REGISTRY:
        raise UsageError(f"unknown --fn {cfg.fn!r}; choose from {', '.join(sorted(dsum.REGISTRY))}")
    sieve = _sieve_for(cfg, b)
    f = dsum.registered(cfg.fn, a, b)
    qc = QuadConfig(abs_tol=cfg.tol, rel_tol=cfg.tol)
    br = dsum.rhs_theorem2(f, sieve, qc, cfg.tail_mode)
    print(f"lhs        {br.lhs:.17g}")
    for i, t in enumerate(br.terms, start=1):
        print(f"t{i}         {t:.17g}")
    print(f"rhs        {br.rhs_total:.17g}")
    print(f"residual   {br.residual:.3e}")
    limit = max(1e-6, 10 * cfg.tol)
    return OK if abs(br.residual) <= limit else BREACH


def cmd_afe_sweep(cfg: RunConfig) -> int:
    if not cfg.s_values or not cfg.x_values:
        raise UsageError("--s and --x must be non-empty")
    bad = [s for s in cfg.s_values if not s > 0 or abs(s - 1) < POLE_MARGIN]
    if bad:
        raise UsageError(f"s values must be > 0 and away from 1: {bad}")
    sieve = _sieve_for(cfg, max(cfg.x_values))
    rows = []
    status = OK
    for s in cfg.s_values:
        for x in cfg.x_values:
            rec = dataclasses.asdict(zeta_afe.afe_record(s, x, sieve))
            if abs(rec["hyperbola_residual"]) > 1e-10 * max(1.0, abs(rec["E2"])):
                status = BREACH
            rows.append(rec)
    write_rows(rows, AFE_FIELDS, cfg.format, cfg.output_path)
    return status


COMMANDS = {
    "delta-table": cmd_delta_table,
    "verify-theorem1": cmd_verify_theorem1,
    "euler-sum": cmd_euler_sum,
    "afe-sweep": cmd_afe_sweep,
}


def _float_list(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}") from None


def build_parser():
    p = argparse.ArgumentParser(prog="dirichlet-divisor", description=__doc__.splitlines()[0])
    p.add_argument("command", choices=sorted(COMMANDS))
    p.add_argument("--xmin", "--a", dest="xmin", type=float, default=1.0)
    p.add_argument("--xmax", "--b", dest="xmax", type=float, default=100.0)
    p.add_argument("--step", type=float, default=1.0)
    p.add_argument("--s", dest="s_values", type=_float_list, default=[])
    p.add_argument("--x", dest="x_values", type=_float_list, default=[])
    p.add_argument("--tol", type=float, default=None)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("--out", dest="output_path", default=None)
    p.add_argument("--sieve-limit", type=int, default=DEFAULT_SIEVE_LIMIT)
    p.add_argument("--tail-mode", choices=[dsum.SAWTOOTH, dsum.FOURIER], default=dsum.SAWTOOTH)
    p.add_argument("--fn", default="one")
    p.add_argument("--decomposition-only", action="store_true")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    opts = vars(args)
    if opts["tol"] is None:
        opts["tol"] = 1e-9 if args.command == "euler-sum" else 1e-12
    try:
        cfg = RunConfig(**opts)
        return COMMANDS[cfg.command](cfg)
    except (UsageError, RangeError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return IO_ERROR
    except DivisorError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BREACH


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
