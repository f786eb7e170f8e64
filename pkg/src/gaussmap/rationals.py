"""Exact rational scalars and their serialized form.

All arithmetic in this package is exact. Scalars are
:class:`fractions.Fraction` values (always reduced, positive denominator),
and they cross serialization boundaries as strings ``"p"`` or ``"p/q"``.
No floats appear anywhere.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import InvalidIndex

Rational = Fraction


def rat_to_string(value: Fraction) -> str:
    """Serialize a rational as ``"p"`` (integral) or ``"p/q"`` (reduced)."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def rat_from_string(text: str) -> Fraction:
    """Parse ``"p"`` or ``"p/q"`` into an exact rational."""
    text = text.strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise InvalidIndex(f"not a rational literal: {text!r}") from exc


def random_direction(rng: random.Random, length: int) -> tuple[Fraction, ...]:
    """Draw a nonzero rational vector with small entries.

    Numerators are uniform on [-20, 20] and denominators on [1, 10];
    all-zero draws are rejected and redrawn so the result is a usable
    direction.
    """
    if length < 1:
        raise InvalidIndex("direction length must be at least 1")
    while True:
        vec = tuple(
            Fraction(rng.randint(-20, 20), rng.randint(1, 10)) for _ in range(length)
        )
        if any(vec):
            return vec


def random_branch_points(rng: random.Random, genus: int) -> tuple[Fraction, ...]:
    """Draw 2*genus+2 distinct rationals with the first pinned to 0.

    Numerators and denominators are bounded by 50 in absolute value, which
    keeps downstream integer growth moderate while still exercising
    non-integral branch points.
    """
    points: list[Fraction] = [Fraction(0)]
    seen = {Fraction(0)}
    while len(points) < 2 * genus + 2:
        cand = Fraction(rng.randint(-50, 50), rng.randint(1, 50))
        if cand not in seen:
            seen.add(cand)
            points.append(cand)
    return tuple(points)
