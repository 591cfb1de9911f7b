"""JSON encodings: rationals as canonical "p/q" strings, recurrences as
{order, coefficients, initial}, matrix sets as {k, pairs}.

Everything emitted here re-parses to an equal value; the string form of a
Fraction is already canonical (reduced, denominator omitted when 1).
"""

from __future__ import annotations

from fractions import Fraction

from .exact.qmatrix import QMatrix
from .lrs import LRS
from .reductions import WeightedMatrixSet


def format_rational(q) -> str:
    return str(Fraction(q))


def parse_rational(value) -> Fraction:
    """Accepts "p/q" / "p" strings and JSON integers; rejects floats, which
    have no exact reading."""
    if isinstance(value, bool):
        raise ValueError(f"not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
    raise ValueError(f"not a rational: {value!r}")


def matrix_to_json(a: QMatrix) -> list[list[str]]:
    return [[format_rational(e) for e in row] for row in a.entries]


def matrix_from_json(rows) -> QMatrix:
    if not isinstance(rows, list) or not rows or not all(
        isinstance(r, list) for r in rows
    ):
        raise ValueError("a matrix is a non-empty list of rows")
    return QMatrix([[parse_rational(e) for e in row] for row in rows])


def wset_to_json(wset: WeightedMatrixSet) -> dict:
    return {
        "k": wset.dim,
        "pairs": [
            {"weight": format_rational(w), "matrix": matrix_to_json(a)}
            for w, a in wset.pairs
        ],
    }


def wset_from_json(obj) -> WeightedMatrixSet:
    try:
        k = obj["k"]
        raw_pairs = obj["pairs"]
    except (TypeError, KeyError) as exc:
        raise ValueError("a matrix set needs 'k' and 'pairs'") from exc
    if not isinstance(k, int) or k < 1:
        raise ValueError("'k' must be a positive integer")
    if not isinstance(raw_pairs, list) or not raw_pairs:
        raise ValueError("'pairs' must be a non-empty list")
    pairs = []
    for item in raw_pairs:
        try:
            weight = item["weight"]
            matrix = item["matrix"]
        except (TypeError, KeyError) as exc:
            raise ValueError("each pair needs 'weight' and 'matrix'") from exc
        pairs.append((parse_rational(weight), matrix_from_json(matrix)))
    return WeightedMatrixSet(k, tuple(pairs))


def lrs_to_json(lrs: LRS) -> dict:
    return {
        "order": lrs.order,
        "coefficients": [format_rational(c) for c in lrs.coeffs],
        "initial": [format_rational(v) for v in lrs.initial],
    }


def lrs_from_json(obj) -> LRS:
    try:
        order = obj["order"]
        coeffs = obj["coefficients"]
        initial = obj["initial"]
    except (TypeError, KeyError) as exc:
        raise ValueError(
            "a recurrence needs 'order', 'coefficients' and 'initial'"
        ) from exc
    if not isinstance(order, int):
        raise ValueError("'order' must be an integer")
    if not isinstance(coeffs, list) or not isinstance(initial, list):
        raise ValueError("'coefficients' and 'initial' must be lists")
    return LRS(
        order,
        tuple(parse_rational(c) for c in coeffs),
        tuple(parse_rational(v) for v in initial),
    )


def load_input(obj) -> LRS | WeightedMatrixSet:
    """Dispatch a parsed JSON document on its keys."""
    if isinstance(obj, dict) and "pairs" in obj:
        return wset_from_json(obj)
    if isinstance(obj, dict) and "coefficients" in obj:
        return lrs_from_json(obj)
    raise ValueError(
        "unrecognized input: expected a matrix set {k, pairs} "
        "or a recurrence {order, coefficients, initial}"
    )


def poly_to_json(p) -> list[str]:
    """Coefficients low degree first, as rational strings."""
    return [format_rational(p.coeff(i)) for i in range(p.degree + 1)]
