"""Command-line front end: ``cycleprod <verb> [flags]``.

Integer flags accept ``5``, ``3..10`` or comma lists such as ``2,4,6..8``;
every combination of values becomes one output row.  Exact values are printed
as ``p/q`` strings; ``--float`` adds a decimal column.

Exit status: 0 on success, 1 when a verification check fails, 2 on a usage
error or when the brute-force oracle refuses an oversized enumeration.
"""

from __future__ import annotations

import argparse
import csv
import io
import itertools
import json
import sys
from fractions import Fraction
from typing import Any, Callable, Iterator, Sequence

from . import characters, cycles, subsets
from .characters import CycleType, cycle_types
from .cycles import FormulaMismatch
from .exact import format_rational, parse_rational
from .montecarlo import McConfig, estimate_events, parse_event
from .oracle import OracleRefused
from .verify import SUITES, run_suite

Row = dict[str, Any]


class UsageError(ValueError):
    pass


# -- argument parsing helpers -------------------------------------------------


def int_values(text: str) -> list[int]:
    """Expand ``"3..6,9"`` to ``[3, 4, 5, 6, 9]``."""
    out: list[int] = []
    for part in text.split(","):
        part = part.strip()
        if ".." in part:
            lo, hi = part.split("..", 1)
            a, b = int(lo), int(hi)
            if b < a:
                raise argparse.ArgumentTypeError(f"empty range {part!r}")
            out.extend(range(a, b + 1))
        else:
            out.append(int(part))
    return out


def _int_values_arg(text: str) -> list[int]:
    try:
        return int_values(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, a range a..b or a comma list, got {text!r}") from None


def _rational_values_arg(text: str) -> list[Fraction]:
    out: list[Fraction] = []
    try:
        for part in text.split(","):
            if ".." in part:
                out.extend(Fraction(v) for v in int_values(part))
            else:
                out.append(parse_rational(part))
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"expected rationals such as 1/2, -3 or 0..4, got {text!r}") from None
    return out


def _sizes_arg(text: str) -> tuple[int, ...]:
    try:
        sizes = tuple(int(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected set sizes such as 2,1,1, got {text!r}") from None
    if not sizes or min(sizes) < 1:
        raise argparse.ArgumentTypeError("set sizes must be positive")
    return sizes


def _occupancy_arg(text: str) -> subsets.OccupancySet:
    try:
        return subsets.OccupancySet.parse(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from None


# -- output -------------------------------------------------------------------


def _cell(v: Any) -> Any:
    if isinstance(v, Fraction):
        return format_rational(v)
    return v


def _add_float(rows: list[Row], cols: Sequence[str]) -> None:
    for row in rows:
        for c in cols:
            if isinstance(row.get(c), Fraction):
                row[f"{c}_float"] = float(row[c])


def emit(rows: list[Row], fmt: str, out: io.TextIOBase) -> None:
    header: list[str] = []
    for row in rows:
        for key in row:
            if key not in header:
                header.append(key)
    if fmt == "json":
        data = [{k: _cell(v) for k, v in row.items()} for row in rows]
        payload: Any = data[0] if len(data) == 1 else data
        out.write(json.dumps(payload, separators=(",", ":")) + "\n")
    elif fmt == "csv":
        w = csv.writer(out, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_text(row.get(h, "")) for h in header])
    else:
        table = [header] + [[_text(row.get(h, "")) for h in header] for row in rows]
        widths = [max(len(r[i]) for r in table) for i in range(len(header))]
        for r in table:
            out.write("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() + "\n")


def _text(v: Any) -> str:
    if isinstance(v, Fraction):
        return format_rational(v)
    if isinstance(v, float):
        return repr(v)
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


# -- verbs --------------------------------------------------------------------


def _grid(**axes: Sequence[Any]) -> Iterator[dict[str, Any]]:
    keys = list(axes)
    for combo in itertools.product(*(axes[k] for k in keys)):
        yield dict(zip(keys, combo))


def _rows_or_error(rows: list[Row], what: str) -> list[Row]:
    if not rows:
        raise UsageError(f"no valid parameter combinations for {what}")
    return rows


def verb_cycles_dist(a: argparse.Namespace) -> list[Row]:
    rows = []
    for g in _grid(N=a.N, k=a.k):
        nus = a.nu if a.nu is not None else range(1, g["N"] + 1)
        for nu in nus:
            rows.append({**g, "nu": nu, "p": cycles.p_num_cycles(g["N"], g["k"], nu)})
    return rows


def verb_identity(a: argparse.Namespace) -> list[Row]:
    return [{**g, "p": cycles.p_identity(g["N"], g["k"])} for g in _grid(N=a.N, k=a.k)]


def verb_is_cycle(a: argparse.Namespace) -> list[Row]:
    return [{**g, "p": cycles.p_is_cycle(g["N"], g["k"])} for g in _grid(N=a.N, k=a.k)]


def verb_pgf(a: argparse.Namespace) -> list[Row]:
    return [{**g, "E": cycles.pgf_num_cycles(g["N"], g["k"], g["x"])} for g in _grid(N=a.N, k=a.k, x=a.x)]


def verb_cycle_type(a: argparse.Namespace) -> list[Row]:
    if a.type is not None:
        ct = CycleType.parse(a.type)
        if a.N is not None and a.N != [ct.N]:
            raise UsageError(f"cycle type {a.type!r} is a type of S_{ct.N}, not of the requested N")
        types_by_n = {ct.N: [ct]}
    elif a.N is not None:
        types_by_n = {N: cycle_types(N) for N in a.N}
    else:
        raise UsageError("give --type or --N")
    rows = []
    for N, types in types_by_n.items():
        for k in a.k:
            dist = characters.product_class_distribution(N, k)
            for ct in types:
                p = cycles.p_cycle_type_k2(ct) if k == 2 else dist[ct]
                if k == 2 and p != dist[ct]:
                    raise FormulaMismatch(f"cycle type {ct}: integral {p} != characters {dist[ct]}")
                rows.append({"N": N, "k": k, "type": str(ct), "p": p})
    return rows


def verb_same_length(a: argparse.Namespace) -> list[Row]:
    rows = [
        {**g, "p": cycles.p_all_same_length(g["N"], g["r"])}
        for g in _grid(N=a.N, r=a.r)
        if g["N"] % g["r"] == 0
    ]
    return _rows_or_error(rows, "same-length (r must divide N)")


def verb_involution(a: argparse.Namespace) -> list[Row]:
    return [{"N": N, "k": 2, "p": cycles.p_involution_k2(N)} for N in a.N]


def verb_occupancy(a: argparse.Namespace) -> list[Row]:
    rows = []
    for g in _grid(N=a.N, ell=a.ell, k=a.k):
        if g["ell"] > g["N"]:
            continue
        spec = subsets.OccupancySpec(g["N"], g["ell"], a.A)
        rows.append({**g, "A": str(a.A), "p": subsets.p_occupancy(spec, g["k"])})
    return _rows_or_error(rows, "occupancy (need ell <= N)")


def verb_a1(a: argparse.Namespace) -> list[Row]:
    rows = []
    for g in _grid(N=a.N, ell=a.ell, k=a.k):
        if 1 <= g["ell"] <= g["N"]:
            p = subsets.p_A1_k2(g["N"], g["ell"]) if g["k"] == 2 else subsets.p_A1(g["N"], g["ell"], g["k"])
            rows.append({**g, "p": p})
    return _rows_or_error(rows, "a1 (need 1 <= ell <= N)")


def verb_a2(a: argparse.Namespace) -> list[Row]:
    rows = []
    for g in _grid(N=a.N, ell=a.ell, k=a.k):
        if 0 <= g["ell"] <= g["N"]:
            p = subsets.p_A2_k2(g["N"], g["ell"]) if g["k"] == 2 else subsets.p_A2(g["N"], g["ell"], g["k"])
            rows.append({**g, "p": p})
    return _rows_or_error(rows, "a2 (need 0 <= ell <= N)")


def verb_snab(a: argparse.Namespace) -> list[Row]:
    rows = [
        {**g, "S": subsets.S_nab(g["n"], g["a"], g["b"])}
        for g in _grid(n=a.n, a=a.a, b=a.b)
        if 0 <= g["a"] and 0 <= g["b"] and g["a"] + g["b"] <= g["n"]
    ]
    return _rows_or_error(rows, "snab (need a, b >= 0 and a + b <= n)")


_SEPARATION_METHODS: dict[str, Callable[[subsets.SeparationSpec], Fraction]] = {
    "bernardi": subsets.p_separation_k2_bernardi,
    "final": subsets.p_separation_k2_final,
    "smallcomp": subsets.p_separation_k2_smallcomp,
    "integral": subsets.p_separation_k2_integral,
    "full": subsets.p_separation_full,
}


def verb_separation(a: argparse.Namespace) -> list[Row]:
    sets = ",".join(map(str, a.sets))
    rows = []
    for g in _grid(N=a.N, k=a.k):
        if sum(a.sets) > g["N"]:
            continue
        spec = subsets.SeparationSpec(g["N"], a.sets)
        row: Row = {**g, "sets": sets}
        if a.method == "lemma":
            row["p"] = subsets.p_separation(spec, g["k"])
        else:
            if g["k"] != 2:
                raise UsageError(f"--method {a.method} is a two-factor formula; use --k 2")
            row["p"] = _SEPARATION_METHODS[a.method](spec)
        rows.append(row)
    return _rows_or_error(rows, "separation (need sum of set sizes <= N)")


def verb_blocking(a: argparse.Namespace) -> list[Row]:
    rows = [
        {**g, "p": subsets.p_blocking(g["N"], g["ell"], g["k"])}
        for g in _grid(N=a.N, ell=a.ell, k=a.k)
        if 0 <= g["ell"] <= g["N"]
    ]
    return _rows_or_error(rows, "blocking (need 0 <= ell <= N)")


def _exact_for_event(name: str, N: int, k: int) -> Fraction | None:
    kind, _, arg = name.partition(":")
    if kind == "is-cycle":
        return cycles.p_is_cycle(N, k)
    if kind == "identity":
        return cycles.p_identity(N, k)
    if kind == "derangement":
        return subsets.p_derangement_k2(N) if k == 2 else None
    if kind == "blocks":
        return subsets.p_blocking(N, int(arg), k)
    if kind == "separates":
        return subsets.p_separation(N, [int(s) for s in arg.split(",")], k)
    if kind == "a1":
        return subsets.p_A1(N, int(arg), k) if int(arg) >= 1 else None
    if kind == "a2":
        return subsets.p_A2(N, int(arg), k)
    return None


def verb_mc(a: argparse.Namespace) -> list[Row]:
    events = a.event or ["is-cycle"]
    for e in events:
        parse_event(e)
    rows = []
    for g in _grid(N=a.N, k=a.k):
        cfg = McConfig(g["N"], g["k"], a.trials, a.seed, a.confidence, a.workers)
        for res in estimate_events(cfg, events):
            exact = _exact_for_event(res.event, g["N"], g["k"])
            row: Row = {
                **g,
                "event": res.event,
                "trials": res.trials,
                "seed": a.seed,
                "hits": res.hits,
                "estimate": res.estimate,
                "low": res.low,
                "high": res.high,
            }
            if exact is not None:
                row["exact"] = exact
                row["covered"] = res.contains(exact)
            rows.append(row)
    return rows


def verb_verify(a: argparse.Namespace) -> list[Row]:
    rows = []
    for N in a.N:
        for k in a.k:
            for check in run_suite(a.suite, N, k, seed=a.seed):
                rows.append({"suite": check.suite, "check": check.name, "N": N, "k": k, "status": check.status, "detail": check.detail})
    return rows


# -- parser -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "csv", "json"), default="table")
    common.add_argument("--float", action="store_true", help="add a decimal column next to each exact value")

    parser = argparse.ArgumentParser(
        prog="cycleprod",
        description="Exact statistics of a product of k uniformly random N-cycles.",
    )
    sub = parser.add_subparsers(dest="verb", required=True, metavar="verb")

    def add(name: str, fn: Callable[[argparse.Namespace], list[Row]], help_: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_, description=help_)
        p.set_defaults(func=fn)
        return p

    N_help = "ground-set size; 5, 3..10 or a comma list"
    k_help = "number of cycle factors"

    p = add("cycles-dist", verb_cycles_dist, "distribution of the number of cycles")
    p.add_argument("--N", type=_int_values_arg, required=True, help=N_help)
    p.add_argument("--k", type=_int_values_arg, required=True, help=k_help)
    p.add_argument("--nu", type=_int_values_arg, help="cycle counts to report (default: all)")

    for name, fn, h in (
        ("identity", verb_identity, "probability that the product is the identity"),
        ("is-cycle", verb_is_cycle, "probability that the product is an N-cycle"),
    ):
        p = add(name, fn, h)
        p.add_argument("--N", type=_int_values_arg, required=True, help=N_help)
        p.add_argument("--k", type=_int_values_arg, required=True, help=k_help)

    p = add("pgf", verb_pgf, "generating function E[x^cycles]")
    p.add_argument("--N", type=_int_values_arg, required=True, help=N_help)
    p.add_argument("--k", type=_int_values_arg, required=True, help=k_help)
    p.add_argument("--x", type=_rational_values_arg, required=True, help="rational points, e.g. 1/2,-3..7")

    p = add("cycle-type", verb_cycle_type, "probability of a given cycle type")
    p.add_argument("--type", help='cycle type such as "1^2 3" or 3,1,1 (default: every type of N)')
    p.add_argument("--N", type=_int_values_arg, help=N_help)
    p.add_argument("--k", type=_int_values_arg, default=[2], help=k_help + " (default 2)")

    p = add("same-length", verb_same_length, "probability that all cycles have length r (k = 2)")
    p.add_argument("--N", type=_int_values_arg, required=True, help=N_help)
    p.add_argument("--r", type=_int_values_arg, required=True, help="common cycle length")

    p = add("involution", verb_involution, "probability that the product is an involution (k = 2)")
    p.add_argument("--N", type=_int_values_arg, required=True, help=N_help)

    p = add("occupancy", verb_occupancy, "every cycle holds an allowed number of elements of [ell]")
    p.add_argument("--N", type=_int_values_arg, required=True, help=N_help)
    p.add_argument("--ell", type=_int_values_arg, required=True, help="size of the marked prefix [ell]")
    p.add_argument("--k", type=_int_values_arg, required=True, help=k_help)
    p.add_argument("--A", type=_occupancy_arg, required=True, help="positive | 0,ell | {a1,a2,...}")

    for name, fn, h in (
        ("a1", verb_a1, "every cycle meets [ell]"),
        ("a2", verb_a2, "all of [ell] lies in one cycle"),
        ("blocking", verb_blocking, "no two elements of [ell] are cyclic neighbours"),
    ):
        p = add(name, fn, h)
        p.add_argument("--N", type=_int_values_arg, required=True, help=N_help)
        p.add_argument("--ell", type=_int_values_arg, required=True, help="size of the marked prefix [ell]")
        p.add_argument("--k", type=_int_values_arg, required=True, help=k_help)

    p = add("snab", verb_snab, "the alternating inverse-binomial sum S_{n,a,b}")
    p.add_argument("--n", type=_int_values_arg, required=True)
    p.add_argument("--a", type=_int_values_arg, required=True)
    p.add_argument("--b", type=_int_values_arg, required=True)

    p = add("separation", verb_separation, "no cycle meets two of the given disjoint sets")
    p.add_argument("--N", type=_int_values_arg, required=True, help=N_help)
    p.add_argument("--sets", type=_sizes_arg, required=True, help="set sizes, e.g. 2,1,1")
    p.add_argument("--k", type=_int_values_arg, required=True, help=k_help)
    p.add_argument(
        "--method",
        choices=("lemma", *_SEPARATION_METHODS),
        default="lemma",
        help="evaluator (the non-lemma forms need k = 2)",
    )

    p = add("verify", verb_verify, "cross-check formulas, characters, the oracle and Monte Carlo")
    p.add_argument("--N", type=_int_values_arg, required=True, help=N_help)
    p.add_argument("--k", type=_int_values_arg, required=True, help=k_help)
    p.add_argument("--suite", choices=SUITES, default="all")
    p.add_argument("--seed", type=int, default=12345, help="seed for the Monte Carlo checks")

    p = add("mc", verb_mc, "Monte Carlo estimate with a Wilson interval")
    p.add_argument("--N", type=_int_values_arg, required=True, help=N_help)
    p.add_argument("--k", type=_int_values_arg, required=True, help=k_help)
    p.add_argument(
        "--event",
        action="append",
        help="is-cycle | identity | derangement | blocks:L | separates:S1,S2,... | a1:L | a2:L (repeatable)",
    )
    p.add_argument("--trials", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--confidence", type=float, choices=(0.95, 0.99), default=0.95)
    p.add_argument("--workers", type=int, default=1)
    return parser


_EXACT_COLUMNS = ("p", "E", "S", "estimate", "exact")


def run(argv: Sequence[str] | None = None, out: io.TextIOBase | None = None, err: io.TextIOBase | None = None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    try:
        rows = args.func(args)
    except OracleRefused as e:
        err.write(f"cycleprod: oracle refused: {e}\n")
        return 2
    except FormulaMismatch as e:
        err.write(f"cycleprod: formula cross-check failed: {e}\n")
        return 1
    except (UsageError, ValueError) as e:
        err.write(f"cycleprod {args.verb}: error: {e}\n")
        return 2
    if args.float:
        _add_float(rows, _EXACT_COLUMNS)
    emit(rows, args.format, out)
    if args.verb == "verify":
        statuses = {r["status"] for r in rows}
        if "fail" in statuses:
            return 1
        if "refused" in statuses:
            err.write("cycleprod verify: some checks were refused by the oracle size cap\n")
            return 2
    return 0


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
