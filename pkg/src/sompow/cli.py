"""Command-line front end.

Commands: classify, decide, reduce, perturb, simulate.  Input is a JSON
file (or "-" for stdin) holding either a matrix set {k, pairs} or a
recurrence {order, coefficients, initial}.  Every report carries the tool
version and the resolved run configuration; text output is a rendering of
the same JSON document, never a separate code path.

Exit codes: 0 yes / success, 1 no, 2 unknown, 3 error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import __version__
from .algebraic.resultants import rational_roots
from .algebraic.rootsets import RootSet
from .decision import decide, violation_log
from .exact.qmatrix import char_poly
from .exact.qpoly import squarefree_decomposition
from .lrs import LRS
from .perturb import check_reduction_identity, reduce_to_simple
from .reductions import (
    WeightedMatrixSet,
    somset_to_lrs,
    unnlrs_to_ennsom,
    uplrs_to_epsom,
)
from .serialize import (
    format_rational,
    load_input,
    lrs_to_json,
    matrix_to_json,
    parse_rational,
    poly_to_json,
    wset_to_json,
)
from .spectral import SpectralClass, classify, eigendecompose, minimal_poly

EXIT_YES, EXIT_NO, EXIT_UNKNOWN, EXIT_ERROR = 0, 1, 2, 3


class CommandError(Exception):
    def __init__(self, message: str, suggestion: str | None = None):
        super().__init__(message)
        self.suggestion = suggestion


def _default_horizon() -> int:
    raw = os.environ.get("SOMPOW_HORIZON")
    if raw is None:
        return 500
    try:
        value = int(raw)
    except ValueError:
        raise CommandError(f"SOMPOW_HORIZON must be an integer, got {raw!r}")
    if value < 1:
        raise CommandError("SOMPOW_HORIZON must be >= 1")
    return value


def _read_document(path: str):
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as exc:
        raise CommandError(f"cannot read {path}: {exc}")
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise CommandError(f"invalid JSON in {path}: {exc}")


def _load(path: str):
    try:
        return load_input(_read_document(path))
    except ValueError as exc:
        raise CommandError(str(exc))


def _need_set(value) -> WeightedMatrixSet:
    if isinstance(value, WeightedMatrixSet):
        return value
    raise CommandError("this command needs a matrix set {k, pairs}")


def _need_lrs(value) -> LRS:
    if isinstance(value, LRS):
        return value
    raise CommandError(
        "this command needs a recurrence {order, coefficients, initial}"
    )


def _horizon(args) -> int:
    given = getattr(args, "horizon", None)
    return _default_horizon() if given is None else given


def _config(args) -> dict:
    return {
        "guard_horizon": _horizon(args),
        "route": getattr(args, "route", "auto"),
        "precision_eps": getattr(args, "epsilon", None),
        "output": args.output,
    }


def _envelope(command: str, config: dict, payload: dict) -> dict:
    return {"command": command, "version": __version__, "config": config, **payload}


# ---------------------------------------------------------------------------
# classify


def _eigenvalue_summary(a) -> list[dict]:
    out = []
    for mult, fac in sorted(squarefree_decomposition(char_poly(a)).items()):
        if fac.degree < 1:
            continue
        rs = RootSet(fac)
        exact = {}
        for cand in rational_roots(fac):
            for i, root in enumerate(rs.roots):
                if not root.is_real:
                    continue
                lo, hi = root.real_interval()
                if lo <= cand <= hi:
                    exact[i] = cand
                    break
        for i, root in enumerate(rs.roots):
            for _ in range(2):
                root.refine()
            box = root.box()
            entry = {
                "multiplicity": mult,
                "re": [format_rational(box.re.lo), format_rational(box.re.hi)],
                "im": [format_rational(box.im.lo), format_rational(box.im.hi)],
            }
            if i in exact:
                entry["value"] = format_rational(exact[i])
            out.append(entry)
    return out


def cmd_classify(args) -> tuple[dict, int]:
    wset = _need_set(_load(args.input))
    matrices = []
    for idx, (w, a) in enumerate(wset.pairs):
        cls = classify(a)
        item = {
            "index": idx + 1,
            "weight": format_rational(w),
            "class": cls.value,
            "char_poly": poly_to_json(char_poly(a)),
            "min_poly": poly_to_json(minimal_poly(a)),
            "eigenvalues": _eigenvalue_summary(a),
        }
        if cls is not SpectralClass.DEFECTIVE:
            item["sigma"] = list(eigendecompose(a).sigma)
        matrices.append(item)
    return {"k": wset.dim, "matrices": matrices}, EXIT_YES


# ---------------------------------------------------------------------------
# decide


def cmd_decide(args) -> tuple[dict, int]:
    wset = _need_set(_load(args.input))
    mode = "nonneg" if args.property == "enn" else "pos"
    horizon = _horizon(args)
    try:
        verdict, report = decide(
            wset, mode, route=args.route, guard_horizon=horizon
        )
    except ValueError as exc:
        if "defective" in str(exc):
            raise CommandError(
                str(exc),
                suggestion=(
                    "run 'reduce to-lrs' on this input and analyse the "
                    "interleaved recurrence instead"
                ),
            )
        raise CommandError(str(exc))
    code = {"yes": EXIT_YES, "no": EXIT_NO, "unknown": EXIT_UNKNOWN}[verdict.kind]
    return report, code


# ---------------------------------------------------------------------------
# reduce


def cmd_reduce(args) -> tuple[dict, int]:
    if args.direction == "to-lrs":
        wset = _need_set(_load(args.input))
        lrs = somset_to_lrs(wset)
        k = wset.dim
        payload = {
            "direction": "to-lrs",
            "lrs": lrs_to_json(lrs),
            "index_map": {
                "k": k,
                "formula": (
                    f"term(r*{k * k} + s*{k} + t) = "
                    "sum_i w_i * A_i^(r+1)[s+1, t+1]"
                ),
                "r": "0, 1, 2, ... (power minus one)",
                "s": f"0..{k - 1} (row minus one)",
                "t": f"0..{k - 1} (column minus one)",
            },
        }
        return payload, EXIT_YES
    lrs = _need_lrs(_load(args.input))
    prop = args.property or "unn"
    builder = unnlrs_to_ennsom if prop == "unn" else uplrs_to_epsom
    payload = {
        "direction": "from-lrs",
        "property": prop,
        "set": wset_to_json(builder(lrs)),
        "note": "the n-th power sum exposes the sequence term of index n-1",
    }
    return payload, EXIT_YES


# ---------------------------------------------------------------------------
# perturb


def cmd_perturb(args) -> tuple[dict, int]:
    wset = _need_set(_load(args.input))
    eps = parse_rational(args.epsilon) if args.epsilon else None
    if eps is not None and eps <= 0:
        raise CommandError("--epsilon must be positive")
    try:
        pairs, f, plan = reduce_to_simple(wset, precision_eps=eps)
    except ValueError as exc:
        raise CommandError(str(exc))
    identity_ok = check_reduction_identity(wset, pairs, f, n_max=20)
    payload = {
        "mu": plan.mu,
        "epsilons": [format_rational(e) for e in f.epsilons],
        "f": "f(n) = sum of epsilon_j^n over the listed epsilons",
        "pairs": [
            {"weight": format_rational(w), "matrix": matrix_to_json(b)}
            for w, b in pairs
        ],
        "identity_check": {
            "n_max": 20,
            "status": "pass" if identity_ok else "fail",
        },
    }
    if eps is not None:
        payload["deviation"] = _deviation_table(wset, f, eps, n_max=30)
    if not identity_ok:
        return payload, EXIT_ERROR
    return payload, EXIT_YES


def _deviation_table(wset: WeightedMatrixSet, f, eps: Fraction, n_max: int) -> dict:
    """Per-n max |(f(n) - 1) * w_i * A_i^n| entry against the eps^n budget."""
    rows = []
    all_within = True
    powers = [a for _, a in wset.pairs]
    bound = Fraction(1)
    for n in range(1, n_max + 1):
        bound *= eps
        drift = f.value(n) - 1
        worst = Fraction(0)
        for (w, _), p in zip(wset.pairs, powers):
            for row in p.entries:
                for e in row:
                    worst = max(worst, abs(drift * w * e))
        within = worst < bound
        all_within = all_within and within
        rows.append(
            {
                "n": n,
                "max_deviation": format_rational(worst),
                "bound": format_rational(bound),
                "within": within,
            }
        )
        powers = [p * a for p, (_, a) in zip(powers, wset.pairs)]
    return {"epsilon": format_rational(eps), "rows": rows, "all_within": all_within}


# ---------------------------------------------------------------------------
# simulate


def cmd_simulate(args) -> tuple[dict, int]:
    wset = _need_set(_load(args.input))
    mode = "nonneg" if args.property == "enn" else "pos"
    horizon = _horizon(args)
    log = violation_log(wset, horizon, mode)
    violations = [
        {"n": n, "entry": list(entry), "value": format_rational(v)}
        for n, entry, v in log
    ]
    clean = not log or log[-1][0] < horizon
    payload = {
        "property": args.property,
        "steps": horizon,
        "violations": violations,
        "clean_tail": clean,
        "candidate_threshold": (log[-1][0] + 1 if log else 1) if clean else None,
    }
    return payload, EXIT_YES


# ---------------------------------------------------------------------------
# wiring


def _render_text(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines: list[str] = []
    if isinstance(obj, dict):
        for key, value in obj.items():
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}{key}:")
                lines.extend(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}{key}: {_scalar(value)}")
    elif isinstance(obj, list):
        for value in obj:
            if isinstance(value, (dict, list)) and value:
                lines.append(f"{pad}-")
                lines.extend(_render_text(value, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(value)}")
    else:
        lines.append(f"{pad}{_scalar(obj)}")
    return lines


def _scalar(value) -> str:
    if value is None:
        return "null"
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (dict, list)):
        return "{}" if isinstance(value, dict) else "[]"
    return str(value)


def _emit(doc: dict, output: str, stream) -> None:
    if output == "json":
        print(json.dumps(doc, indent=2), file=stream)
    else:
        print("\n".join(_render_text(doc)), file=stream)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sompow",
        description=(
            "exact eventual-sign analysis of weighted sums of matrix powers"
        ),
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, route=False, horizon=False, epsilon=False, prop=None):
        p.add_argument("input", help="input JSON file, or - for stdin")
        if prop:
            p.add_argument(
                "--property", choices=prop, required=(prop[0] == "enn"),
                help="property to analyse",
            )
        if route:
            p.add_argument(
                "--route", choices=["auto", "direct", "perturb"], default="auto"
            )
        if horizon:
            p.add_argument(
                "--horizon", type=int, default=None,
                help="guard / simulation horizon (default SOMPOW_HORIZON or 500)",
            )
        if epsilon:
            p.add_argument(
                "--epsilon", default=None,
                help="precision budget as a rational, e.g. 1/2",
            )
        p.add_argument("--output", choices=["json", "text"], default="json")

    common(sub.add_parser("classify", help="spectral class per matrix"))
    common(
        sub.add_parser("decide", help="eventual-sign verdict"),
        route=True, horizon=True, prop=["enn", "ep"],
    )
    reduce_p = sub.add_parser("reduce", help="convert between set and recurrence")
    reduce_p.add_argument("direction", choices=["to-lrs", "from-lrs"])
    common(reduce_p, prop=["unn", "up"])
    common(
        sub.add_parser("perturb", help="reduce to simple matrices"),
        epsilon=True,
    )
    common(
        sub.add_parser("simulate", help="exact bounded violation scan"),
        horizon=True, prop=["enn", "ep"],
    )
    return parser


COMMANDS = {
    "classify": cmd_classify,
    "decide": cmd_decide,
    "reduce": cmd_reduce,
    "perturb": cmd_perturb,
    "simulate": cmd_simulate,
}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = _config(args)
        if config["guard_horizon"] < 1:
            raise CommandError("--horizon must be >= 1")
        payload, code = COMMANDS[args.command](args)
    except CommandError as exc:
        doc = {"command": args.command, "version": __version__, "error": str(exc)}
        if exc.suggestion:
            doc["suggestion"] = exc.suggestion
        _emit(doc, getattr(args, "output", "json"), sys.stderr)
        return EXIT_ERROR
    _emit(_envelope(args.command, config, payload), args.output, sys.stdout)
    return code


if __name__ == "__main__":
    raise SystemExit(main())
