"""Independent reference computations for the test suite.

These deliberately avoid the library's completion machinery: chain minima
are found by enumerating simple paths outright.
"""

from __future__ import annotations

from fractions import Fraction

from urysphere import Label, PartialSemimetric, truncated_sum

ONE = Fraction(1)


def min_chain_value(partial: PartialSemimetric, x: Label, y: Label) -> Fraction:
    """Cheapest truncated chain of defined pairs from x to y; 1 if none.

    Enumerates simple paths only: weights are nonnegative, so revisiting a
    point never shortens a chain.
    """
    if x == y:
        return Fraction(0)
    points = partial.points
    best = ONE

    def extend(current: Label, visited: set[Label], legs: list[Fraction]) -> None:
        nonlocal best
        for nxt in points:
            if nxt in visited or not partial.defined(current, nxt):
                continue
            legs.append(partial.get(current, nxt))
            total = truncated_sum(legs)
            if nxt == y:
                if total < best:
                    best = total
            elif total < best:
                visited.add(nxt)
                extend(nxt, visited, legs)
                visited.remove(nxt)
            legs.pop()

    extend(x, {x}, [])
    return best
