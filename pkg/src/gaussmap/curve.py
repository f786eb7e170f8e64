"""Hyperelliptic curve model and local expansions at a Weierstrass point.

The curve is y^2 = prod(x - t_i) over distinct rational branch points
t_1 = 0, t_2, ..., t_{2g+2}, with base point p = (0, 0). The local
coordinate at p is z = y, in which x becomes an even power series
x(z) = z^2/G(0) + ... determined by x * G(x) = z^2, where
G(x) = prod_{i >= 2} (x - t_i).

Everything downstream consumes exact jet data at p:

* canonical differentials alpha_i = x^i dx / y for i = 0..g-1, written in
  the frame dz, give local functions  x(z)^i * x'(z) / z  of order 2i;
* twisted forms omega_k (canonical forms vanishing doubly at both points
  over x = infinity), for k = 1..g-1, written in the frame z^2 dz, give
  local functions  x^{g-k} x' / z^3  of order 2g-2k-2.

Because x is even in z, all of these expansions are computed internally
in the variable w = z^2 (halving series lengths) and re-expanded or read
off as z-jets on demand. Tables of high-order derivatives at z = 0 are
cached per curve; the cache only ever grows and is semantically invisible.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .errors import (
    DuplicateBranchPoint,
    FirstBranchPointNotZero,
    IndexOutOfRange,
    InvalidIndex,
    TooFewBranchPoints,
)
from .poly import Poly, poly_derivative
from .rationals import rat_from_string, rat_to_string
from .series import TruncatedSeries


@dataclass(frozen=True)
class Curve:
    """Immutable hyperelliptic curve given by its branch points."""

    branch_points: tuple[Fraction, ...]
    _cache: dict = field(default_factory=dict, compare=False, repr=False)

    @property
    def genus(self) -> int:
        return len(self.branch_points) // 2 - 1

    def moduli_polynomial(self) -> Poly:
        """G(x) = prod over nonzero branch points of (x - t_i)."""
        g = Poly.from_coeffs((1,))
        for t in self.branch_points[1:]:
            g = g * Poly.from_coeffs((-t, 1))
        return g

    def g_at_zero(self) -> Fraction:
        acc = Fraction(1)
        for t in self.branch_points[1:]:
            acc *= -t
        return acc

    def label(self) -> str:
        return "[" + ", ".join(rat_to_string(t) for t in self.branch_points) + "]"

    def to_json(self) -> dict:
        return {"branch_points": [rat_to_string(t) for t in self.branch_points]}


def new_curve(points) -> Curve:
    """Validate branch points and build a curve.

    Requirements: at least 8 points (genus >= 3), an even count, all
    distinct, and the first one exactly 0 (the base Weierstrass point).
    """
    values = tuple(
        p if isinstance(p, Fraction) else
        rat_from_string(p) if isinstance(p, str) else Fraction(p)
        for p in points
    )
    if len(values) < 8:
        raise TooFewBranchPoints(
            f"need at least 8 branch points (genus >= 3), got {len(values)}"
        )
    if len(values) % 2 != 0:
        raise InvalidIndex(f"branch point count must be even, got {len(values)}")
    if values[0] != 0:
        raise FirstBranchPointNotZero(
            f"first branch point must be 0, got {rat_to_string(values[0])}"
        )
    seen: set[Fraction] = set()
    for v in values:
        if v in seen:
            raise DuplicateBranchPoint(f"branch point {rat_to_string(v)} repeated")
        seen.add(v)
    return Curve(branch_points=values)


def default_curve(genus: int) -> Curve:
    """The integer-node curve with branch points 0, 1, ..., 2g+1."""
    if genus < 3:
        raise TooFewBranchPoints(f"genus must be at least 3, got {genus}")
    return new_curve(tuple(Fraction(i) for i in range(2 * genus + 2)))


def random_curve(genus: int, rng) -> Curve:
    from .rationals import random_branch_points

    if genus < 3:
        raise TooFewBranchPoints(f"genus must be at least 3, got {genus}")
    return new_curve(random_branch_points(rng, genus))


def curve_from_json(data) -> Curve:
    if isinstance(data, str):
        data = json.loads(data)
    if not isinstance(data, dict) or "branch_points" not in data:
        raise InvalidIndex('curve JSON must be an object with "branch_points"')
    return new_curve(data["branch_points"])


# -- local expansions -------------------------------------------------------


def _x_series_w(curve: Curve, order_w: int) -> TruncatedSeries:
    """Solve X(w) * G(X(w)) = w by Newton iteration, in the variable w = z^2.

    The seed w/G(0) is correct through order 2 and Newton doubles the
    number of correct coefficients each round; the residual is asserted
    to vanish identically at the working order before returning.
    """
    cached = curve._cache.get("x_w")
    if cached is not None and cached.truncation >= order_w:
        return cached.truncate(order_w)
    gpoly = curve.moduli_polynomial()
    gprime = poly_derivative(gpoly)
    g0 = curve.g_at_zero()
    w = TruncatedSeries.monomial(1, 1, truncation=order_w)
    x = TruncatedSeries.make((Fraction(0), 1 / g0), 2)
    correct = 2
    while correct < order_w:
        correct = min(2 * correct, order_w)
        x = x.truncate(correct) if x.truncation > correct else TruncatedSeries.make(x.coeffs, correct)
        gx = x.compose_poly(gpoly).truncate(correct)
        gpx = x.compose_poly(gprime).truncate(correct)
        residual = (x * gx - w.truncate(correct)).truncate(correct)
        slope = (gx + x * gpx).truncate(correct)
        x = (x - residual * slope.inverse(correct)).truncate(correct)
    final = (x * x.compose_poly(gpoly).truncate(order_w) - w).truncate(order_w)
    if not final.is_zero_to_truncation():
        raise IndexOutOfRange("local solve failed to converge at the working order")
    curve._cache["x_w"] = x
    return x


def _canonical_rows_w(curve: Curve, order_w: int) -> tuple[TruncatedSeries, ...]:
    """w-expansions of the canonical frame functions x^i x'/z, i = 0..g-1.

    In w-form: x'/z = 2 dX/dw, so row i is X^i * 2X'(w). Row i has exact
    w-valuation i (z-valuation 2i), which is asserted.
    """
    genus = curve.genus
    # every row's w-valuation (at most genus) must be visible at the
    # working order, whatever jet range the caller asked for
    order_w = max(order_w, genus + 2)
    cached = curve._cache.get("k_rows")
    if cached is not None and cached[0] >= order_w:
        return tuple(r.truncate(order_w) for r in cached[1])
    x = _x_series_w(curve, order_w + 1)
    base = x.derivative().scale(2).truncate(order_w)
    rows: list[TruncatedSeries] = []
    power = TruncatedSeries.make((Fraction(1),), None)
    for i in range(genus):
        row = (power * base).truncate(order_w)
        if row.valuation() != i:
            raise IndexOutOfRange(
                f"canonical function {i} has unexpected vanishing order"
            )
        rows.append(row)
        power = power * x
    frozen = tuple(rows)
    curve._cache["k_rows"] = (order_w, frozen)
    return frozen


def _even_to_z(series_w: TruncatedSeries, order_z: int) -> TruncatedSeries:
    coeffs = [Fraction(0)] * order_z
    for m, c in enumerate(series_w.coeffs):
        if 2 * m < order_z:
            coeffs[2 * m] = c
    if series_w.truncation is not None and 2 * series_w.truncation < order_z:
        raise IndexOutOfRange("w-expansion too short for requested z order")
    return TruncatedSeries.make(coeffs, order_z)


def x_of_z(curve: Curve, order: int) -> TruncatedSeries:
    """The even series x(z) to the requested z-truncation order."""
    if order < 1:
        raise IndexOutOfRange("order must be positive")
    order_w = order // 2 + 1
    return _even_to_z(_x_series_w(curve, order_w), order)


@dataclass(frozen=True)
class LocalFrameExpansion:
    """A section's local function at p in a stated frame, as a z-series."""

    frame: str
    index: int
    valuation: int
    series: TruncatedSeries


def expand_canonical(curve: Curve, i: int, order: int) -> LocalFrameExpansion:
    """z-expansion of x^i dx/y in the frame dz (local function x^i x'/z)."""
    genus = curve.genus
    if not 0 <= i <= genus - 1:
        raise IndexOutOfRange(f"canonical index {i} outside 0..{genus - 1}")
    if order < 2 * i + 1:
        raise IndexOutOfRange("order too small to exhibit the vanishing order")
    rows = _canonical_rows_w(curve, order // 2 + 1)
    return LocalFrameExpansion(
        frame="dz", index=i, valuation=2 * i, series=_even_to_z(rows[i], order)
    )


def expand_omega(curve: Curve, k: int, order: int) -> LocalFrameExpansion:
    """z-expansion of the twisted form omega_k in the frame z^2 dz.

    omega_k = x^{g-k} dx/y carries a double zero at each point over
    x = infinity; its local function in the frame z^2 dz is
    x^{g-k} x'/z^3, of exact order 2g-2k-2.
    """
    genus = curve.genus
    if not 1 <= k <= genus - 1:
        raise IndexOutOfRange(f"omega index {k} outside 1..{genus - 1}")
    if order < 2 * genus - 2 * k - 1:
        raise IndexOutOfRange("order too small to exhibit the vanishing order")
    rows = _canonical_rows_w(curve, order // 2 + 2)
    shifted = rows[genus - k].shift_down(1)
    return LocalFrameExpansion(
        frame="z^2 dz",
        index=k,
        valuation=2 * genus - 2 * k - 2,
        series=_even_to_z(shifted, order),
    )


def canonical_derivatives(curve: Curve, max_order: int) -> tuple[tuple[Fraction, ...], ...]:
    """Exact jets: row i, column h holds d^h/dz^h at 0 of x^i x'/z.

    Odd columns vanish identically (the functions are even); they are
    stored anyway so callers can index by derivative order directly.
    """
    key = "k_derivs"
    cached = curve._cache.get(key)
    if cached is not None and cached[0] >= max_order:
        return tuple(tuple(row[: max_order + 1]) for row in cached[1])
    order_w = max_order // 2 + 2
    rows = _canonical_rows_w(curve, order_w)
    table = []
    for row in rows:
        jets = []
        for h in range(max_order + 1):
            if h % 2 == 1:
                jets.append(Fraction(0))
            else:
                jets.append(row.coefficient(h // 2) * factorial(h))
        table.append(tuple(jets))
    frozen = tuple(table)
    curve._cache[key] = (max_order, frozen)
    return frozen


def omega_derivatives(curve: Curve, max_order: int) -> tuple[tuple[Fraction, ...], ...]:
    """Exact jets of the omega frame functions; row k-1 is omega_k."""
    genus = curve.genus
    order_w = max_order // 2 + 3
    rows = _canonical_rows_w(curve, order_w)
    table = []
    for k in range(1, genus):
        shifted = rows[genus - k].shift_down(1)
        if shifted.valuation() != genus - k - 1:
            raise IndexOutOfRange(
                f"omega function {k} has unexpected vanishing order"
            )
        jets = []
        for h in range(max_order + 1):
            if h % 2 == 1:
                jets.append(Fraction(0))
            else:
                jets.append(shifted.coefficient(h // 2) * factorial(h))
        table.append(tuple(jets))
    return tuple(table)


def x_derivatives(curve: Curve, max_order: int) -> tuple[Fraction, ...]:
    """Exact jets of the coordinate function x(z) itself at z = 0."""
    x = _x_series_w(curve, max_order // 2 + 2)
    out = []
    for h in range(max_order + 1):
        if h % 2 == 1:
            out.append(Fraction(0))
        else:
            out.append(x.coefficient(h // 2) * factorial(h))
    return tuple(out)
