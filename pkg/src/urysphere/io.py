"""Document formats shared by every command.

A space document is JSON with a "points" array of string labels and a
"distances" array of triples [label, label, "p/q"]; omitted pairs are
undefined (partial spaces) or an error (total spaces).  Rationals are
reduced nonnegative fractions at most 1, written "p/q" with decimal integer
parts and no interior whitespace; "0" and "1" are accepted as shorthand.
Role annotations {"A": [...], "B": [...], "C": [...], "b_star": label} ride
along when a command needs them.  Serialization is canonical: labels sorted,
pairs listed once with the lexicographically smaller label first, fractions
reduced, two-space indentation.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterable, Mapping

from .indiscernibles import SequenceTemplate
from .metric import FiniteMetricSpace, PartialSemimetric, Label


class DocumentError(ValueError):
    """An input document failed to parse or validate; names the offending field."""


_RATIONAL_RE = re.compile(r"^(\d+)(?:/(\d+))?$")


def parse_rational(text: str, where: str = "value") -> Fraction:
    if not isinstance(text, str):
        raise DocumentError(f"{where}: rational must be a string, got {text!r}")
    match = _RATIONAL_RE.match(text)
    if match is None:
        raise DocumentError(f"{where}: malformed rational {text!r}")
    p = int(match.group(1))
    q = int(match.group(2)) if match.group(2) is not None else 1
    if q < 1:
        raise DocumentError(f"{where}: zero denominator in {text!r}")
    value = Fraction(p, q)
    if value > 1:
        raise DocumentError(f"{where}: {text!r} exceeds 1")
    return value


def format_rational(value: Fraction) -> str:
    return str(value)


@dataclass(frozen=True)
class Roles:
    a_set: tuple[Label, ...] = ()
    b_set: tuple[Label, ...] = ()
    base: tuple[Label, ...] = ()
    b_star: Label | None = None


@dataclass(frozen=True)
class SpaceDocument:
    points: tuple[Label, ...]
    distances: tuple[tuple[Label, Label, Fraction], ...]
    roles: Roles = field(default_factory=Roles)

    def to_partial(self) -> PartialSemimetric:
        return PartialSemimetric.from_pairs(
            self.points, {(x, y): v for x, y, v in self.distances}
        )

    def to_total(self) -> FiniteMetricSpace:
        try:
            return FiniteMetricSpace.from_distances(
                self.points, {(x, y): v for x, y, v in self.distances}
            )
        except ValueError as exc:
            raise DocumentError(f"distances: {exc}") from None


def _string_list(raw: Any, where: str) -> tuple[str, ...]:
    if not isinstance(raw, list) or any(not isinstance(x, str) for x in raw):
        raise DocumentError(f"{where}: expected an array of strings")
    return tuple(raw)


def parse_space_document(data: Any) -> SpaceDocument:
    if not isinstance(data, Mapping):
        raise DocumentError("document: expected a JSON object")
    points = _string_list(data.get("points"), "points")
    if len(set(points)) != len(points):
        raise DocumentError("points: labels must be distinct")
    known = set(points)

    raw_distances = data.get("distances", [])
    if not isinstance(raw_distances, list):
        raise DocumentError("distances: expected an array")
    seen: set[frozenset[str]] = set()
    triples: list[tuple[Label, Label, Fraction]] = []
    for pos, item in enumerate(raw_distances):
        where = f"distances[{pos}]"
        if not isinstance(item, list) or len(item) != 3:
            raise DocumentError(f"{where}: expected [label, label, rational]")
        x, y, raw = item
        if not isinstance(x, str) or not isinstance(y, str):
            raise DocumentError(f"{where}: labels must be strings")
        for lbl in (x, y):
            if lbl not in known:
                raise DocumentError(f"{where}: unknown label {lbl!r}")
        value = parse_rational(raw, where)
        if x == y:
            if value != 0:
                raise DocumentError(f"{where}: nonzero self-distance at {x!r}")
            continue
        key = frozenset((x, y))
        if key in seen:
            raise DocumentError(f"{where}: duplicate pair ({x!r}, {y!r})")
        seen.add(key)
        triples.append((x, y, value))

    roles = Roles()
    raw_roles = data.get("roles")
    if raw_roles is not None:
        if not isinstance(raw_roles, Mapping):
            raise DocumentError("roles: expected an object")
        parts = {}
        for name in ("A", "B", "C"):
            if name in raw_roles:
                labels = _string_list(raw_roles[name], f"roles.{name}")
                for lbl in labels:
                    if lbl not in known:
                        raise DocumentError(f"roles.{name}: unknown label {lbl!r}")
                parts[name] = labels
        b_star = raw_roles.get("b_star")
        if b_star is not None:
            if not isinstance(b_star, str) or b_star not in known:
                raise DocumentError(f"roles.b_star: unknown label {b_star!r}")
        roles = Roles(
            a_set=parts.get("A", ()),
            b_set=parts.get("B", ()),
            base=parts.get("C", ()),
            b_star=b_star,
        )
    return SpaceDocument(points, tuple(triples), roles)


def space_document(
    space: FiniteMetricSpace | PartialSemimetric, roles: Roles | None = None
) -> dict:
    """Canonical JSON object for a space: sorted labels, reduced fractions."""
    doc: dict[str, Any] = {"points": sorted(space.points)}
    if isinstance(space, FiniteMetricSpace):
        pairs = [
            (x, y, space.dist(x, y))
            for i, x in enumerate(space.points)
            for y in space.points[i + 1 :]
        ]
    else:
        pairs = list(space.pairs())
    doc["distances"] = [
        [x, y, format_rational(v)]
        for x, y, v in sorted(
            ((min(x, y), max(x, y), v) for x, y, v in pairs)
        )
    ]
    if roles is not None:
        block: dict[str, Any] = {}
        if roles.a_set:
            block["A"] = sorted(roles.a_set)
        if roles.b_set:
            block["B"] = sorted(roles.b_set)
        if roles.base:
            block["C"] = sorted(roles.base)
        if roles.b_star is not None:
            block["b_star"] = roles.b_star
        if block:
            doc["roles"] = block
    return doc


def parse_template_document(data: Any) -> SequenceTemplate:
    if not isinstance(data, Mapping):
        raise DocumentError("document: expected a JSON object")
    k = data.get("k")
    if not isinstance(k, int) or k < 1:
        raise DocumentError("k: expected a positive integer")

    def matrix(name: str) -> tuple[tuple[Fraction, ...], ...]:
        raw = data.get(name)
        if not isinstance(raw, list) or len(raw) != k:
            raise DocumentError(f"{name}: expected {k} rows")
        rows = []
        for r, row in enumerate(raw):
            if not isinstance(row, list) or len(row) != k:
                raise DocumentError(f"{name}[{r}]: expected {k} entries")
            rows.append(
                tuple(parse_rational(v, f"{name}[{r}][{c}]") for c, v in enumerate(row))
            )
        return tuple(rows)

    try:
        return SequenceTemplate(matrix("delta"), matrix("eps"))
    except ValueError as exc:
        raise DocumentError(str(exc)) from None


def template_document(template: SequenceTemplate) -> dict:
    return {
        "k": template.k,
        "delta": [[format_rational(v) for v in row] for row in template.delta],
        "eps": [[format_rational(v) for v in row] for row in template.eps],
    }


def dumps(document: dict) -> str:
    return json.dumps(document, indent=2, sort_keys=True) + "\n"


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}: {exc.msg}") from None
