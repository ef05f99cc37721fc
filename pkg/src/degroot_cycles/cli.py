"""``degroot-cycles`` command line.

Exit codes: 0 success, 1 validation failure or negative verdict,
2 non-convergence or indeterminate verdict, 3 I/O or parse error.
Agents are labelled 1..n on the command line and in every output.
"""
from __future__ import annotations

import argparse
import sys

import numpy as np

from . import __version__
from .cycle import (
    EQUIVALENT,
    INDETERMINATE,
    cycle_from_pi,
    cycle_to_matrix,
    verify_equivalence,
)
from .digraph import analyze, digraph_from_matrix
from .errors import NotUnique, ValidationError
from .forests import ENUMERATION_BOUND, tree_weight_vector
from .formats import (
    InputError,
    dumps,
    parse_number,
    read_matrix,
    read_vector,
    to_dot,
    write_matrix,
)
from .matrix_core import (
    LIMIT_TOL,
    MAX_DOUBLINGS,
    PIVOT_TOL,
    ROW_TOL,
    iterate_opinions,
    limit_powers,
    matrix_rank,
    stationary_vector,
    validate_stochastic,
)

EXIT_OK, EXIT_FAIL, EXIT_NONCONV, EXIT_IO = 0, 1, 2, 3


class NonConvergence(Exception):
    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload or {}


def _num(x) -> str:
    return format(float(x), ".12g")


def _row(v) -> str:
    return "  ".join(_num(x) for x in v)


def _labels(vertices) -> list[int]:
    return [v + 1 for v in vertices]


def _load(args):
    return validate_stochastic(read_matrix(args.matrix), args.row_tol)


def _emit(args, payload: dict, lines: list[str]) -> None:
    if args.json:
        print(dumps(payload))
    else:
        print("\n".join(lines))


def cmd_validate(args) -> int:
    raw = read_matrix(args.matrix)
    P = validate_stochastic(raw, args.row_tol)
    dev = np.abs(raw.sum(axis=1) - 1.0)
    _emit(
        args,
        {"valid": True, "n": P.n, "row_sum_deviation": dev},
        [f"valid stochastic matrix, n={P.n}", "row-sum deviations: " + _row(dev)],
    )
    return EXIT_OK


def cmd_analyze(args) -> int:
    P = _load(args)
    rep = analyze(digraph_from_matrix(P, args.zero_tol))
    rank_L = matrix_rank(np.eye(P.n) - P.entries, args.pivot_tol)
    comps = [_labels(c) for c in rep.components]
    payload = {
        "n": P.n,
        "components": comps,
        "basic_flags": rep.basic_flags,
        "nu": rep.nu,
        "b": rep.b,
        "periods": rep.periods,
        "has_spanning_out_tree": rep.has_spanning_out_tree,
        "regular": rep.regular,
        "limit_exists": rep.limit_exists,
        "rank_L": rank_L,
    }
    lines = [f"n={P.n}", "components:"]
    for c, flag, per in zip(comps, rep.basic_flags, rep.periods):
        kind = "basic" if flag else "nonbasic"
        shown = per if per else "inf"
        lines.append(f"  {{{', '.join(map(str, c))}}} {kind} period={shown}")
    lines += [
        f"nu={rep.nu}",
        f"b={rep.b}",
        f"has_spanning_out_tree={str(rep.has_spanning_out_tree).lower()}",
        f"regular={str(rep.regular).lower()}",
        f"limit_exists={str(rep.limit_exists).lower()}",
        f"rank_L={rank_L}",
    ]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_limit(args) -> int:
    P = _load(args)
    res = limit_powers(P, args.tol, args.max_doublings)
    payload = {
        "status": res.status,
        "residual": res.residual,
        "doublings_used": res.doublings_used,
    }
    if not res.converged:
        raise NonConvergence(
            f"P^k does not converge: residual ||QP - Q|| = {_num(res.residual)} "
            f"after {res.doublings_used} doublings",
            payload,
        )
    payload["limit"] = res.limit_candidate
    _emit(args, payload, [_row(r) for r in res.limit_candidate])
    return EXIT_OK


def _stationary(P, method: str, args) -> np.ndarray:
    if method == "linear":
        return stationary_vector(P, args.pivot_tol)
    if method == "trees":
        return tree_weight_vector(digraph_from_matrix(P), ENUMERATION_BOUND).normalized
    res = limit_powers(P, args.tol, args.max_doublings)
    if not res.converged:
        raise NonConvergence(
            f"power method needs lim P^k; residual {_num(res.residual)}",
            {"status": res.status, "residual": res.residual},
        )
    Q = res.limit_candidate
    if np.abs(Q - Q[0]).max() > 1e-8:
        raise NotUnique(matrix_rank(Q, 1e-8))
    return Q[0].copy()


def cmd_stationary(args) -> int:
    P = _load(args)
    pi = _stationary(P, args.method, args)
    _emit(args, {"method": args.method, "pi": pi}, [_row(pi)])
    return EXIT_OK


def _parse_order(text: str | None, n: int):
    if text is None:
        return None
    try:
        order = [int(t) - 1 for t in text.split(",") if t.strip()]
    except ValueError:
        raise ValidationError(f"--order must list agents 1..{n}, got {text!r}") from None
    if len(order) != n:
        raise ValidationError(f"--order has {len(order)} entries, expected {n}")
    return order


def cmd_synthesize(args) -> int:
    pi = read_vector(args.pi)
    beta = parse_number(args.beta) if args.beta is not None else None
    spec = cycle_from_pi(pi, beta, _parse_order(args.order, len(pi)))
    P = cycle_to_matrix(spec)
    if args.out:
        write_matrix(args.out, P.entries)
    if args.dot:
        G = digraph_from_matrix(P)
        try:
            with open(args.dot, "w") as fh:
                fh.write(to_dot(G, show_loops=True))
        except OSError as exc:
            raise InputError(f"cannot write {args.dot}: {exc.strerror or exc}") from None
    order = _labels(spec.order)
    payload = {
        "n": spec.n,
        "order": order,
        "beta": spec.beta,
        "entering_weight": spec.entering_weight,
        "loop_weight": spec.loop_weight,
        "matrix": P.entries,
    }
    lines = [
        "cycle: " + " -> ".join(map(str, order + order[:1])),
        f"beta={_num(spec.beta)}",
        "entering weights: " + _row(spec.entering_weight),
        "loop weights: " + _row(spec.loop_weight),
        "matrix:",
    ] + ["  " + _row(r) for r in P.entries]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_verify(args) -> int:
    Pa = validate_stochastic(read_matrix(args.a), args.row_tol)
    Pb = validate_stochastic(read_matrix(args.b), args.row_tol)
    rep = verify_equivalence(Pa, Pb, args.tol)
    payload = {
        "verdict": rep.verdict,
        "limit_exists": list(rep.limit_exists),
        "rank_one": list(rep.rank_one),
        "max_difference": rep.max_difference,
        "rows": list(rep.stationary_rows),
    }
    lines = [
        f"verdict: {rep.verdict}",
        f"limit exists: {str(rep.limit_exists[0]).lower()}, {str(rep.limit_exists[1]).lower()}",
        f"rank one: {str(rep.rank_one[0]).lower()}, {str(rep.rank_one[1]).lower()}",
    ]
    if rep.max_difference is not None:
        lines.append(f"max row difference: {_num(rep.max_difference)}")
    _emit(args, payload, lines)
    if rep.verdict == EQUIVALENT:
        return EXIT_OK
    return EXIT_NONCONV if rep.verdict == INDETERMINATE else EXIT_FAIL


def cmd_simulate(args) -> int:
    P = _load(args)
    s0 = read_vector(args.s0)
    traj = iterate_opinions(P, s0, args.steps)
    header = "step," + ",".join(f"s{i + 1}" for i in range(P.n))
    body = [f"{k}," + ",".join(repr(float(x)) for x in s) for k, s in enumerate(traj)]
    text = "\n".join([header] + body) + "\n"
    if args.out:
        try:
            with open(args.out, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise InputError(f"cannot write {args.out}: {exc.strerror or exc}") from None
    if args.json:
        print(dumps({"steps": args.steps, "trajectory": traj}))
    elif not args.out:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_export_dot(args) -> int:
    P = _load(args)
    text = to_dot(digraph_from_matrix(P, args.zero_tol), args.show_loops)
    if args.json:
        print(dumps({"dot": text}))
    else:
        sys.stdout.write(text)
    return EXIT_OK


def _bool(text: str) -> bool:
    low = text.lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise argparse.ArgumentTypeError(f"expected a boolean, got {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="degroot-cycles",
        description="Analyze DeGroot pooling matrices and synthesize equivalent "
        "Hamiltonian cycles with loops.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--row-tol", type=float, default=ROW_TOL)

    limit_opts = argparse.ArgumentParser(add_help=False)
    limit_opts.add_argument("--tol", type=float, default=LIMIT_TOL)
    limit_opts.add_argument("--max-doublings", type=int, default=MAX_DOUBLINGS)

    pivot = argparse.ArgumentParser(add_help=False)
    pivot.add_argument("--pivot-tol", type=float, default=PIVOT_TOL)

    p = sub.add_parser("validate", parents=[common], help="check a stochastic matrix")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("analyze", parents=[common, pivot], help="components, nu, regularity")
    p.add_argument("matrix")
    p.add_argument("--zero-tol", type=float, default=0.0)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("limit", parents=[common, limit_opts], help="lim P^k")
    p.add_argument("matrix")
    p.set_defaults(func=cmd_limit)

    p = sub.add_parser(
        "stationary", parents=[common, limit_opts, pivot], help="final weight distribution"
    )
    p.add_argument("matrix")
    p.add_argument("--method", choices=["linear", "trees", "power"], default="linear")
    p.set_defaults(func=cmd_stationary)

    p = sub.add_parser("synthesize", parents=[common], help="cycle with loops realizing pi")
    p.add_argument("pi")
    p.add_argument("--beta", help="scale, 0 < beta <= min(pi); fractions like 10/101 accepted")
    p.add_argument("--order", help="visiting order as comma-separated agents, e.g. 4,3,2,1")
    p.add_argument("--out", help="write the cycle's influence matrix (.csv or .json)")
    p.add_argument("--dot", help="write the cycle as Graphviz DOT, loops included")
    p.set_defaults(func=cmd_synthesize)

    p = sub.add_parser("verify", parents=[common], help="same consensus for every start?")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", parents=[common], help="opinion trajectory as CSV")
    p.add_argument("matrix")
    p.add_argument("s0")
    p.add_argument("--steps", type=int, default=10)
    p.add_argument("--out", help="write the CSV here instead of stdout")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("export-dot", parents=[common], help="communication digraph as DOT")
    p.add_argument("matrix")
    p.add_argument("--show-loops", type=_bool, nargs="?", const=True, default=False)
    p.add_argument("--zero-tol", type=float, default=0.0)
    p.set_defaults(func=cmd_export_dot)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as exc:
        code, kind, message, extra = EXIT_IO, "InputError", str(exc), {}
    except ValidationError as exc:
        code, kind, message, extra = EXIT_FAIL, type(exc).__name__, str(exc), {}
    except NonConvergence as exc:
        code, kind, message, extra = EXIT_NONCONV, "NonConvergence", str(exc), exc.payload
    if getattr(args, "json", False):
        print(dumps({"error": kind, "message": message, **extra}))
    print(f"error: {kind}: {message}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
