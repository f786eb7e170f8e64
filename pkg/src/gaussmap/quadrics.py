"""Coordinates on the space of quadrics through the canonical curve.

For a hyperelliptic curve of genus g the quadrics cutting out the image
of the canonical map form a space of dimension (g-1)(g-2)/2 with a
convenient basis indexed by pairs 1 <= i < j <= g-1:

    Q_ij = alpha_i . alpha_{j-1} - alpha_j . alpha_{i-1}

("." is the symmetric product), where alpha_m = x^m dx/y is the canonical
basis. A quadric is stored by its exact coefficients a_ij in this basis
("a-coordinates", lexicographic pair order).

Two derived presentations are used throughout:

* the symmetric tensor ("c-tensor"): the g x g symmetric matrix of
  coefficients over alpha_m (x) alpha_n, with the symmetric product
  expanded as half the sum of the two tensor orders;
* "b-coordinates": the same quadric written against the decomposable
  products s*omega_i . t*omega_j - s*omega_j . t*omega_i built from the
  degree-two pencil section s and the twisted forms; the change of basis
  is the exact involution b_{k,h} = -a_{g-h,g-k}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IndexOutOfRange
from .rationals import rat_from_string, rat_to_string


def sym_pairs(genus: int) -> tuple[tuple[int, int], ...]:
    """Index pairs (i, j), 1 <= i < j <= g-1, in lexicographic order."""
    if genus < 3:
        raise IndexOutOfRange(f"genus must be at least 3, got {genus}")
    return tuple(
        (i, j) for i in range(1, genus) for j in range(i + 1, genus)
    )


def wedge_pairs(genus: int) -> tuple[tuple[int, int], ...]:
    """Index pairs (i, j), 0 <= i < j <= g-1, for the exterior square."""
    if genus < 3:
        raise IndexOutOfRange(f"genus must be at least 3, got {genus}")
    return tuple(
        (i, j) for i in range(genus) for j in range(i + 1, genus)
    )


def quadric_space_dimension(genus: int) -> int:
    return (genus - 1) * (genus - 2) // 2


@dataclass(frozen=True)
class QuadricI2:
    """A quadric through the canonical curve, in exact a-coordinates."""

    genus: int
    a_coords: tuple[Fraction, ...]

    def __post_init__(self):
        expected = quadric_space_dimension(self.genus)
        if len(self.a_coords) != expected:
            raise IndexOutOfRange(
                f"expected {expected} coordinates for genus {self.genus}, "
                f"got {len(self.a_coords)}"
            )

    # -- coordinate access ------------------------------------------------

    def a(self, i: int, j: int) -> Fraction:
        return self.a_coords[_pair_index(self.genus, i, j)]

    def b(self, k: int, h: int) -> Fraction:
        g = self.genus
        _check_pair(g, k, h)
        return -self.a(g - h, g - k)

    def b_coords(self) -> tuple[Fraction, ...]:
        return tuple(self.b(k, h) for (k, h) in sym_pairs(self.genus))

    def is_zero(self) -> bool:
        return not any(self.a_coords)

    def sym_tensor(self) -> tuple[tuple[Fraction, ...], ...]:
        """Symmetric g x g coefficient matrix over alpha_m (x) alpha_n."""
        g = self.genus
        c = [[Fraction(0)] * g for _ in range(g)]
        half = Fraction(1, 2)
        for (i, j), coeff in zip(sym_pairs(g), self.a_coords):
            if coeff == 0:
                continue
            c[i][j - 1] += coeff * half
            c[j - 1][i] += coeff * half
            c[j][i - 1] -= coeff * half
            c[i - 1][j] -= coeff * half
        return tuple(tuple(row) for row in c)

    def to_json(self) -> dict:
        return {
            f"{i},{j}": rat_to_string(coeff)
            for (i, j), coeff in zip(sym_pairs(self.genus), self.a_coords)
            if coeff != 0
        }

    def label(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for (i, j), coeff in zip(sym_pairs(self.genus), self.a_coords):
            if coeff != 0:
                parts.append(f"{rat_to_string(coeff)}*Q[{i},{j}]")
        return " + ".join(parts)


def _check_pair(genus: int, i: int, j: int) -> None:
    if not (1 <= i < j <= genus - 1):
        raise IndexOutOfRange(
            f"pair ({i},{j}) outside 1 <= i < j <= {genus - 1}"
        )


def _pair_index(genus: int, i: int, j: int) -> int:
    _check_pair(genus, i, j)
    # pairs with first entry < i come first
    before = sum(genus - 1 - m for m in range(1, i))
    return before + (j - i - 1)


def basis_quadric(genus: int, i: int, j: int) -> QuadricI2:
    """The basis element Q_ij."""
    idx = _pair_index(genus, i, j)
    coords = [Fraction(0)] * quadric_space_dimension(genus)
    coords[idx] = Fraction(1)
    return QuadricI2(genus=genus, a_coords=tuple(coords))


def quadric_from_a(genus: int, entries) -> QuadricI2:
    """Build a quadric from a mapping {(i, j): value} or {"i,j": value}."""
    coords = [Fraction(0)] * quadric_space_dimension(genus)
    for key, value in entries.items():
        if isinstance(key, str):
            parts = key.split(",")
            if len(parts) != 2:
                raise IndexOutOfRange(f"bad pair key {key!r}")
            i, j = int(parts[0]), int(parts[1])
        else:
            i, j = key
        if isinstance(value, str):
            value = rat_from_string(value)
        coords[_pair_index(genus, i, j)] = Fraction(value)
    return QuadricI2(genus=genus, a_coords=tuple(coords))


def quadric_from_vector(genus: int, vector) -> QuadricI2:
    return QuadricI2(genus=genus, a_coords=tuple(Fraction(v) for v in vector))


def combine(genus: int, coefficients, quadrics) -> QuadricI2:
    """Exact linear combination of quadrics."""
    dim = quadric_space_dimension(genus)
    acc = [Fraction(0)] * dim
    for coeff, q in zip(coefficients, quadrics):
        if q.genus != genus:
            raise IndexOutOfRange("cannot combine quadrics of different genus")
        for idx in range(dim):
            acc[idx] += Fraction(coeff) * q.a_coords[idx]
    return QuadricI2(genus=genus, a_coords=tuple(acc))
