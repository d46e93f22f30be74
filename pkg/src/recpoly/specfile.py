"""Loading recurrence specs from JSON documents.

The concrete document syntax is JSON (one fixed choice).  Schema:

    {
      "variables":    ["x", "y"],          # ordered variable names
      "order":        2,
      "coefficients": ["x", "y"],          # expression strings, c_1..c_k
      "initial":      ["0", "1"],          # expression strings, P_0..P_{k-1}
      "family":       "custom"             # optional preset tag
    }

A non-"custom" family tag expands to a documented preset and forbids
overriding ``variables``, ``coefficients`` and ``initial``;
``generalized-lucas`` additionally requires ``order`` (k >= 2).
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Mapping

from .closedform import generalized_lucas_spec
from .parse import ParseError, parse_poly
from .recurrence import RecurrenceSpec
from .ring import MultiPoly

FAMILY_TAGS = ("fibonacci2", "lucas2", "dickson-d", "dickson-e",
               "generalized-lucas", "custom")


class SpecFormatError(ValueError):
    """A spec document is malformed; the message names the offending field."""


def family_spec(tag: str, order: int | None = None) -> RecurrenceSpec:
    """Expand a family preset tag into a RecurrenceSpec."""
    if tag in ("fibonacci2", "lucas2"):
        variables = ("x", "y")
        q1 = MultiPoly.var("x", variables)
        q2 = MultiPoly.var("y", variables)
        zero = MultiPoly.zero(variables)
        one = MultiPoly.const(variables, 1)
        two = MultiPoly.const(variables, 2)
        initial = [zero, one] if tag == "fibonacci2" else [two, q1]
        return RecurrenceSpec.make(variables, [q1, q2], initial)
    if tag in ("dickson-d", "dickson-e"):
        variables = ("x", "a")
        x = MultiPoly.var("x", variables)
        a = MultiPoly.var("a", variables)
        initial = [MultiPoly.const(variables, 2 if tag == "dickson-d" else 1), x]
        return RecurrenceSpec.make(variables, [x, -a], initial)
    if tag == "generalized-lucas":
        if order is None:
            raise SpecFormatError("family 'generalized-lucas' requires field 'order'")
        if order < 2:
            raise SpecFormatError("order: generalized-lucas requires order >= 2")
        return generalized_lucas_spec(order)
    raise SpecFormatError(f"family: unknown tag {tag!r} (known: {', '.join(FAMILY_TAGS)})")


def _expr_list(doc: Mapping, field: str, order: int, variables: tuple[str, ...]) -> list[MultiPoly]:
    raw = doc.get(field)
    if raw is None:
        raise SpecFormatError(f"{field}: missing field")
    if not isinstance(raw, list) or not all(isinstance(s, str) for s in raw):
        raise SpecFormatError(f"{field}: expected a list of expression strings")
    if len(raw) != order:
        raise SpecFormatError(f"{field}: expected {order} entries, got {len(raw)}")
    polys = []
    for idx, text in enumerate(raw):
        try:
            polys.append(parse_poly(text, variables))
        except ParseError as exc:
            raise SpecFormatError(f"{field}[{idx}]: {exc}") from exc
    return polys


def spec_from_mapping(doc: Mapping) -> RecurrenceSpec:
    if not isinstance(doc, Mapping):
        raise SpecFormatError("document: expected a JSON object")
    tag = doc.get("family", "custom")
    if tag not in FAMILY_TAGS:
        raise SpecFormatError(f"family: unknown tag {tag!r} (known: {', '.join(FAMILY_TAGS)})")
    if tag != "custom":
        for field in ("variables", "coefficients", "initial"):
            if field in doc:
                raise SpecFormatError(f"{field}: may not be overridden when family={tag!r}")
        order = doc.get("order")
        if order is not None and not isinstance(order, int):
            raise SpecFormatError("order: expected an integer")
        spec = family_spec(tag, order)
        if order is not None and spec.order != order:
            raise SpecFormatError(f"order: family {tag!r} has order {spec.order}, got {order}")
        return spec

    variables = doc.get("variables")
    if not isinstance(variables, list) or not all(isinstance(v, str) for v in variables):
        raise SpecFormatError("variables: expected a list of names")
    if len(set(variables)) != len(variables):
        raise SpecFormatError("variables: duplicate names")
    variables = tuple(variables)
    order = doc.get("order")
    if not isinstance(order, int) or order < 1:
        raise SpecFormatError("order: expected an integer >= 1")
    coeffs = _expr_list(doc, "coefficients", order, variables)
    initial = _expr_list(doc, "initial", order, variables)
    return RecurrenceSpec.make(variables, coeffs, initial)


def load_spec(path: str | Path) -> RecurrenceSpec:
    """Load and fully validate a JSON spec document."""
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise SpecFormatError(f"document: cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFormatError(f"document: invalid JSON: {exc}") from exc
    return spec_from_mapping(doc)
