"""Command-line front end.

    suspended-pfl simulate --config case_a --out case_a.csv
    suspended-pfl eigen --config planar_standard
    suspended-pfl kpi --log case_a.csv --joints q4,q5 --channels Fx,Fy,tau_z --format csv
    suspended-pfl batch --config case_a case_b --out-dir logs --jobs 2

``--config`` takes a YAML path or the name of a shipped fixture.
Exit codes: 0 success, 2 config error, 3 run aborted, 4 analysis error.
"""

from __future__ import annotations

import argparse
import csv
import io
import logging
import math
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

import numpy as np

from .analysis import LimitCycle, detect_limit_cycle, kpi_report, linearize
from .errors import ConfigValidationError, NotAnEquilibrium, ParseError, RunAborted
from .scenario import parse_scenario
from .sim import SimLog, run

EXIT_OK, EXIT_CONFIG, EXIT_ABORTED, EXIT_ANALYSIS = 0, 2, 3, 4

log = logging.getLogger("suspended_pfl")


def csv_header(ndof: int, nu: int, measured: bool, wind: bool) -> list[str]:
    cols = ["t"] + [f"q{i}" for i in range(1, ndof + 1)] + [f"dq{i}" for i in range(1, ndof + 1)]
    cols += ["Fx", "Fy", "tau_z"] if nu == 3 else ["tau"]
    if measured:
        cols += [f"qm{i}" for i in range(1, ndof + 1)] + [f"dqm{i}" for i in range(1, ndof + 1)]
    if wind:
        cols += ["Fwx", "Fwy"]
    return cols


def write_csv(sim_log: SimLog, path) -> None:
    """Write a log with 17 significant digits, so values re-parse exactly."""
    measured = sim_log.q_meas is not None
    wind = sim_log.wind is not None
    header = csv_header(sim_log.ndof, sim_log.u.shape[1], measured, wind)
    blocks = [sim_log.t[:, None], sim_log.q, sim_log.dq, sim_log.u]
    if measured:
        blocks += [sim_log.q_meas, sim_log.dq_meas]
    if wind:
        blocks.append(sim_log.wind)
    data = np.hstack(blocks)
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        np.savetxt(fh, data, fmt="%.17g", delimiter=",")


def read_csv(path) -> SimLog:
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().strip().split(",")
        text = fh.read()
    if not header or header[0] != "t":
        raise ParseError(f"{path}: not a simulation log (header must start with 't')", 1)
    data = np.loadtxt(io.StringIO(text), delimiter=",", ndmin=2)
    if data.shape[1] != len(header):
        raise ParseError(f"{path}: {data.shape[1]} columns but {len(header)} header fields")
    col = {name: i for i, name in enumerate(header)}
    n = sum(1 for h in header if h.startswith("q") and h[1:].isdigit())
    pick = lambda names: data[:, [col[x] for x in names]]  # noqa: E731
    wrench = ["Fx", "Fy", "tau_z"] if "Fx" in col else ["tau"]
    qs = [f"q{i}" for i in range(1, n + 1)]
    dqs = [f"dq{i}" for i in range(1, n + 1)]
    measured = "qm1" in col
    return SimLog(
        t=data[:, 0], q=pick(qs), dq=pick(dqs), u=pick(wrench),
        q_meas=pick([f"qm{i}" for i in range(1, n + 1)]) if measured else None,
        dq_meas=pick([f"dqm{i}" for i in range(1, n + 1)]) if measured else None,
        wind=pick(["Fwx", "Fwy"]) if "Fwx" in col else None,
        name=Path(path).stem,
    )


def _summary(sim_log: SimLog) -> list[str]:
    final = float(np.max(np.abs(sim_log.q[-1])))
    names = ["Fx", "Fy", "tau_z"] if sim_log.u.shape[1] == 3 else ["tau"]
    peak = ", ".join(f"{n}={v:.4g}" for n, v in zip(names, np.max(np.abs(sim_log.u), axis=0)))
    lines = [f"{sim_log.name}: final |q|_inf = {final:.3e} rad", f"max |u|: {peak}"]
    for j in range(sim_log.ndof):
        res = detect_limit_cycle(sim_log.t, sim_log.q[:, j])
        if isinstance(res, LimitCycle):
            lines.append(f"warning: limit cycle detected in q{j + 1} "
                         f"(amplitude {res.amplitude:.4g} rad, period {res.period:.4g} s)")
    return lines


def _simulate_one(config_path, out_path) -> tuple[int, list[str]]:
    try:
        cfg = parse_scenario(config_path)
    except (ParseError, ConfigValidationError) as exc:
        return EXIT_CONFIG, [f"config error: {exc}"]
    try:
        sim_log = run(cfg)
    except RunAborted as exc:
        return EXIT_ABORTED, [f"run aborted at t={exc.t:.4f} s: {exc.cause!r}",
                              f"state q={exc.q.tolist()} dq={exc.dq.tolist()}"]
    out = Path(out_path)
    out.parent.mkdir(parents=True, exist_ok=True)
    write_csv(sim_log, out)
    return EXIT_OK, _summary(sim_log) + [f"wrote {out}"]


def cmd_simulate(args) -> int:
    code, lines = _simulate_one(args.config, args.out)
    stream = sys.stdout if code == EXIT_OK else sys.stderr
    for line in lines:
        print(line, file=stream)
    return code


def cmd_batch(args) -> int:
    out_dir = Path(args.out_dir)
    jobs = [(c, out_dir / f"{Path(c).stem}.csv") for c in args.config]
    with ProcessPoolExecutor(max_workers=args.jobs) as pool:
        results = list(pool.map(_simulate_one, *zip(*jobs)))
    worst = EXIT_OK
    for (config, _), (code, lines) in zip(jobs, results):
        print(f"[{config}] exit {code}")
        for line in lines:
            print(f"  {line}")
        worst = max(worst, code)
    return worst


def cmd_eigen(args) -> int:
    try:
        cfg = parse_scenario(args.config)
    except (ParseError, ConfigValidationError) as exc:
        print(f"config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        res = linearize(cfg.controller)
    except (NotAnEquilibrium, ArithmeticError) as exc:
        print(f"analysis error: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS
    rows = [(float(lam.real), float(lam.imag), c.value)
            for lam, c in zip(res.eigenvalues, res.classification)]
    if args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["re", "im", "classification"])
        w.writerows((repr(r), repr(i), c) for r, i, c in rows)
    else:
        print(f"{cfg.name}: {cfg.model} model, {cfg.controller.mode.value} mode")
        print(f"{'Re':>14} {'Im':>14}  classification")
        for r, i, c in rows:
            print(f"{r:14.6f} {i:14.6f}  {c}")
    return EXIT_OK


def _csv_list(text: str) -> list[str]:
    return [x.strip() for x in text.split(",") if x.strip()]


def _fmt(v) -> str:
    if v is None:
        return "undefined"
    if isinstance(v, float) and math.isinf(v):
        return "NoiseFree" if v > 0 else "-inf"
    return repr(float(v)) if isinstance(v, float) else str(v)


def cmd_kpi(args) -> int:
    try:
        sim_log = read_csv(args.log)
    except (OSError, ValueError) as exc:
        print(f"cannot read log: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    joints = _csv_list(args.joints)
    channels = _csv_list(args.channels) if args.channels else None
    if channels is None:
        channels = ["Fx", "Fy", "tau_z"] if sim_log.u.shape[1] == 3 else ["tau"]
    try:
        for j in joints:
            if not (j.startswith("q") and 1 <= int(j[1:]) <= sim_log.ndof):
                raise ValueError(f"unknown joint {j!r}")
        rep = kpi_report(sim_log.t, sim_log.q, sim_log.u, joints, channels,
                         smoothing_window=args.window)
    except (ValueError, IndexError) as exc:
        print(f"analysis error: {exc}", file=sys.stderr)
        return EXIT_ANALYSIS
    if args.format == "csv":
        w = csv.writer(sys.stdout, lineterminator="\n")
        w.writerow(["item", "kpi", "value"])
        w.writerows((a, b, _fmt(v)) for a, b, v in rep.rows())
    else:
        for a, b, v in rep.rows():
            print(f"{a:>6}  {b:<14} {_fmt(v)}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="suspended-pfl",
                                 description="Cable-suspended platform PFL simulations")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("simulate", help="run one scenario and write its CSV log")
    s.add_argument("--config", required=True, help="YAML file or fixture name")
    s.add_argument("--out", required=True)
    s.set_defaults(func=cmd_simulate)

    b = sub.add_parser("batch", help="run several scenarios concurrently")
    b.add_argument("--config", nargs="+", required=True)
    b.add_argument("--out-dir", default=".")
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_batch)

    e = sub.add_parser("eigen", help="closed-loop eigenvalues at the equilibrium")
    e.add_argument("--config", required=True)
    e.add_argument("--format", choices=["table", "csv"], default="table")
    e.set_defaults(func=cmd_eigen)

    k = sub.add_parser("kpi", help="response time, peak response and SNR of a log")
    k.add_argument("--log", required=True)
    k.add_argument("--joints", default="q4,q5")
    k.add_argument("--channels", default=None)
    k.add_argument("--window", type=float, default=0.1, help="SNR smoothing window [s]")
    k.add_argument("--format", choices=["table", "csv"], default="table")
    k.set_defaults(func=cmd_kpi)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
