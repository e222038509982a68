"""Command-line interface and shared request/response assembly.

Subcommands: ``n`` (per-transformation sample sizes), ``power`` (power of a
given n), ``simulate`` (one Monte Carlo cell), ``table`` (reproduce a
published table), ``presets`` (the three reference studies), and ``serve``
(HTTP service).  The row-building helpers here are also what the HTTP
layer serves, which keeps CLI and API outputs numerically identical.
"""

import argparse
import csv
import io
import json
import math
import os
import sys

from . import design as dsg
from . import mcsim
from .errors import DomainError
from .presets import STUDIES
from .surv_model import CensoringScheme
from .transforms import ALL_KINDS, TransformKind, parse_kind

_FAMILY_ALIASES = {"exp": "exponential", "exponential": "exponential",
                   "weibull": "weibull"}


def resolve_kinds(name: str) -> list[TransformKind]:
    if name == "all":
        return list(ALL_KINDS)
    return [parse_kind(name)]


def build_spec(args_like: dict, kind: TransformKind) -> dsg.DesignSpec:
    scheme = CensoringScheme(args_like["accrual"], args_like["followup"],
                             args_like["censor_fraction"])
    return dsg.DesignSpec(s0=args_like["s0"], s1=args_like["s1"], t=args_like["t"],
                          alpha=args_like["alpha"], beta=1.0 - args_like["power"],
                          kind=kind, scheme=scheme, family=args_like["family"],
                          shape=args_like["shape"])


def design_rows(inputs: dict, kinds: list[TransformKind], method: str) -> list[dict]:
    """One {kind, n, tau0, tau1, epsilon, achieved_power} row per transformation."""
    rows = []
    for kind in kinds:
        result = dsg.sample_size(build_spec(inputs, kind), method)
        rows.append({"kind": kind.value, "n": result.n, "tau0": result.tau0,
                     "tau1": result.tau1, "epsilon": result.epsilon,
                     "achieved_power": result.achieved_power})
    return rows


def power_rows(inputs: dict, kinds: list[TransformKind], method: str,
               n: int) -> list[dict]:
    """Power of the chosen formula at sample size n, per transformation."""
    rows = []
    for kind in kinds:
        spec = build_spec(inputs, kind)
        power = (dsg.power_proposed(spec, n) if method == dsg.PROPOSED
                 else dsg.power_existing(spec, n))
        rows.append({"kind": kind.value, "n": n, "power": power})
    return rows


def power_curves(inputs: dict, kinds: list[TransformKind], method: str) -> list[dict]:
    """Sampled power-vs-n curves spanning half to 1.5 times the largest design n."""
    designs = {kind: dsg.sample_size(build_spec(inputs, kind), method)
               for kind in kinds}
    n_max = max(result.n for result in designs.values())
    lo = max(2, math.floor(0.5 * n_max))
    hi = math.ceil(1.5 * n_max)
    stride = max(1, math.ceil((hi - lo) / 400))
    curves = []
    for kind, result in designs.items():
        spec = build_spec(inputs, kind)
        grid = sorted(set(range(lo, hi + 1, stride)) | {lo, hi, result.n})
        power_fn = dsg.power_proposed if method == dsg.PROPOSED else dsg.power_existing
        samples = [{"n": n, "power": power_fn(spec, n)} for n in grid]
        curves.append({"kind": kind.value, "n_design": result.n, "samples": samples})
    return curves


# ---------------------------------------------------------------------------
# Output rendering
# ---------------------------------------------------------------------------

def _emit_rows(rows: list[dict], out: str, stream) -> None:
    if out == "json":
        json.dump(rows, stream, indent=2)
        stream.write("\n")
        return
    if not rows:
        return
    columns = list(rows[0].keys())
    if out == "csv":
        writer = csv.DictWriter(stream, fieldnames=columns, lineterminator="\n")
        writer.writeheader()
        for row in rows:
            writer.writerow({k: ("" if row.get(k) is None else row[k])
                             for k in columns})
        return
    formatted = []
    for row in rows:
        cells = []
        for key in columns:
            value = row[key]
            if value is None:
                cells.append("")
            elif isinstance(value, float):
                cells.append(f"{value:.5f}" if "power" in key or "phat" in key
                             else f"{value:.6f}")
            else:
                cells.append(str(value))
        formatted.append(cells)
    widths = [max(len(col), *(len(r[i]) for r in formatted))
              for i, col in enumerate(columns)]
    stream.write("  ".join(col.ljust(w) for col, w in zip(columns, widths)).rstrip() + "\n")
    for cells in formatted:
        stream.write("  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip() + "\n")


def _design_inputs(args) -> dict:
    return {"s0": args.s0, "s1": args.s1, "t": args.t, "accrual": args.accrual,
            "followup": args.fup, "alpha": args.alpha, "power": args.power,
            "family": _FAMILY_ALIASES[args.family], "shape": args.shape,
            "censor_fraction": args.censor_frac}


def _add_design_flags(parser: argparse.ArgumentParser, s1_required: bool = True):
    parser.add_argument("--s0", type=float, required=True,
                        help="null survival probability at t")
    parser.add_argument("--s1", type=float, required=s1_required, default=None,
                        help="alternative survival probability at t")
    parser.add_argument("--t", type=float, required=True, help="analysis time (months)")
    parser.add_argument("--accrual", type=float, required=True,
                        help="accrual length a (months)")
    parser.add_argument("--fup", type=float, required=True,
                        help="follow-up length b (months)")
    parser.add_argument("--alpha", type=float, default=0.05, help="one-sided level")
    parser.add_argument("--power", type=float, default=0.8, help="target power 1-beta")
    parser.add_argument("--transform", default="all",
                        choices=[k.value for k in ALL_KINDS] + ["all"])
    parser.add_argument("--method", default=dsg.PROPOSED,
                        choices=[dsg.PROPOSED, dsg.EXISTING])
    parser.add_argument("--family", default="exp", choices=["exp", "weibull"])
    parser.add_argument("--shape", type=float, default=1.0, help="Weibull shape k")
    parser.add_argument("--censor-frac", type=float, default=0.0,
                        help="random-censoring fraction p")


def _add_sim_flags(parser: argparse.ArgumentParser):
    parser.add_argument("--reps", type=int, default=100_000,
                        help="Monte Carlo replications")
    parser.add_argument("--seed", type=int, default=20260801, help="master seed")
    parser.add_argument("--workers", type=int, default=1, help="parallel workers")


def _cmd_n(args, stream) -> int:
    rows = design_rows(_design_inputs(args), resolve_kinds(args.transform), args.method)
    _emit_rows(rows, args.out, stream)
    return 0


def _cmd_power(args, stream) -> int:
    rows = power_rows(_design_inputs(args), resolve_kinds(args.transform),
                      args.method, args.n)
    _emit_rows(rows, args.out, stream)
    return 0


def _cmd_simulate(args, stream) -> int:
    if args.s1 is None:
        args.s1 = args.s0
    scenario = mcsim.Scenario(family=_FAMILY_ALIASES[args.family], shape=args.shape,
                              s0=args.s0, s1=args.s1, t=args.t, accrual=args.accrual,
                              followup=args.fup, random_fraction=args.censor_frac,
                              alpha=args.alpha, n=args.n)
    sim = mcsim.simulate(scenario, args.reps, args.seed, args.workers)
    rows = [{"kind": kind.value, "n": args.n, "rejections": sim.counts[kind.value],
             "phat": sim.p_hat[kind.value], "mc_se": sim.mc_se[kind.value],
             "reps": sim.reps, "seed": sim.seed}
            for kind in ALL_KINDS]
    _emit_rows(rows, args.out, stream)
    return 0


def _cmd_table(args, stream) -> int:
    rows = mcsim.run_table(args.id, args.reps, args.seed, args.workers, args.cells)
    if args.out == "csv":
        stream.write(mcsim.rows_to_csv(rows))
    else:
        _emit_rows(rows, args.out, stream)
    return 0


def _cmd_presets(args, stream) -> int:
    _emit_rows([dict(row) for row in STUDIES], args.out, stream)
    return 0


def _cmd_serve(args, stream) -> int:
    import uvicorn

    from .server import create_app

    port = args.port if args.port is not None else int(os.environ.get("KMDESIGN_PORT", "8000"))
    uvicorn.run(create_app(), host="127.0.0.1", port=port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="kmdesign",
                                     description="Single-arm survival trial design "
                                                 "via transformed Kaplan-Meier tests")
    sub = parser.add_subparsers(dest="command", required=True)

    p_n = sub.add_parser("n", help="per-transformation sample sizes")
    _add_design_flags(p_n)
    p_n.add_argument("--out", default="text", choices=["text", "csv", "json"])
    p_n.set_defaults(func=_cmd_n)

    p_power = sub.add_parser("power", help="power of a formula at a given n")
    _add_design_flags(p_power)
    p_power.add_argument("--n", type=int, required=True, help="sample size")
    p_power.add_argument("--out", default="text", choices=["text", "csv", "json"])
    p_power.set_defaults(func=_cmd_power)

    p_sim = sub.add_parser("simulate", help="Monte Carlo rejection rates for one cell")
    # s1 optional: omitting it (or matching s0) makes a type-I-error cell
    _add_design_flags(p_sim, s1_required=False)
    p_sim.add_argument("--n", type=int, required=True, help="sample size per replication")
    _add_sim_flags(p_sim)
    p_sim.add_argument("--out", default="text", choices=["text", "csv", "json"])
    p_sim.set_defaults(func=_cmd_simulate)

    p_table = sub.add_parser("table", help="reproduce a published table")
    p_table.add_argument("--id", required=True, choices=list(mcsim.TABLE_IDS))
    _add_sim_flags(p_table)
    p_table.add_argument("--cells", default=None,
                         help="cell-id substring filter, or 'design-only' to skip simulation")
    p_table.add_argument("--out", default="csv", choices=["text", "csv", "json"])
    p_table.set_defaults(func=_cmd_table)

    p_presets = sub.add_parser("presets", help="the three reference study designs")
    p_presets.add_argument("--out", default="text", choices=["text", "csv", "json"])
    p_presets.set_defaults(func=_cmd_presets)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--port", type=int, default=None,
                         help="port (default: KMDESIGN_PORT or 8000)")
    p_serve.set_defaults(func=_cmd_serve)
    return parser


def cli_main(argv=None, stream=None) -> int:
    stream = stream or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, stream)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
