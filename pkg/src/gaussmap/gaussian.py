"""Higher Gaussian maps of the canonical bundle: kernels, ranks, identities.

Even maps. Restricted to quadrics through the canonical curve, the 2k-th
Gaussian map is computed in the affine x-chart, where the canonical frame
functions are simply f_m = x^m. Vanishing of the map on a quadric with
symmetric tensor c is equivalent to a finite family of exact linear
equations on the a-coordinates, one per monomial degree l:

    sum_{i+j=l} a_ij (j - i) prod_{q=0}^{k-2} (i - q)(j - q) = 0,

for l between max(3, 2k-1) and 2g-3. Intersecting these level systems
produces the strictly decreasing kernel chain.

Two independent routes compute each kernel:

* ``kernel_via_equations`` assembles the closed-form level equations and
  intersects incrementally, restricting each new system to the previous
  kernel;
* ``kernel_via_polynomial_oracle`` never uses the closed form: it imposes
  the raw derivative identities sum c_ab f_a^(h) f_b^(n) == 0 (as
  polynomials in x) for all h + n <= 2k+1, coefficient by coefficient.

Both produce canonical (reduced row-echelon) bases, so agreement is
literal tuple equality.

Odd maps act on the exterior square of the canonical space and are
handled by ``odd_kernel_and_rank`` (x-chart equations) and
``wronskian_rank_oracle`` (exact jets of Wronskians at the base point —
a genuinely different computation on a concrete curve).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb

from .curve import Curve, canonical_derivatives
from .errors import IndexOutOfRange, InvalidIndex, NotInKernel, NotInPreviousKernel
from .linalg import RatMatrix, Vector, canonicalize_span, dot, kernel_basis, matrix_rank
from .poly import Poly, falling
from .quadrics import QuadricI2, quadric_space_dimension, sym_pairs, wedge_pairs
from .rationals import rat_to_string


def _c_entries(i: int, j: int) -> tuple[tuple[int, int, Fraction], ...]:
    """Nonzero symmetric-tensor slots of the basis quadric Q_ij."""
    half = Fraction(1, 2)
    return (
        (i, j - 1, half),
        (j - 1, i, half),
        (j, i - 1, -half),
        (i - 1, j, -half),
    )


# -- closed-form level equations --------------------------------------------


@dataclass(frozen=True)
class EquationSystem:
    """The level-k linear system cutting Ker mu_2k inside Ker mu_{2k-2}."""

    genus: int
    level: int
    rows: tuple[Vector, ...]
    row_labels: tuple[int, ...]
    pair_counts: tuple[tuple[int, int], ...]
    expected_rank_increment: int


def kernel_equations(genus: int, k: int) -> EquationSystem:
    if k < 1:
        raise IndexOutOfRange(f"level must be at least 1, got {k}")
    pairs = sym_pairs(genus)
    lo = max(3, 2 * k - 1)
    hi = 2 * genus - 3
    rows: list[Vector] = []
    labels: list[int] = []
    for l in range(lo, hi + 1):
        row = []
        for (i, j) in pairs:
            if i + j != l:
                row.append(Fraction(0))
                continue
            coeff = Fraction(j - i)
            for q in range(k - 1):
                coeff *= (i - q) * (j - q)
            row.append(coeff)
        rows.append(tuple(row))
        labels.append(l)
    counts = tuple(
        (l, sum(1 for (i, j) in pairs if i + j == l)) for l in range(3, hi + 1)
    )
    return EquationSystem(
        genus=genus,
        level=k,
        rows=tuple(rows),
        row_labels=tuple(labels),
        pair_counts=counts,
        expected_rank_increment=2 * genus - (4 * k + 1),
    )


# -- kernel chains -----------------------------------------------------------


@dataclass(frozen=True)
class KernelLevel:
    k: int
    dimension: int
    rank: int
    basis: tuple[Vector, ...]


@dataclass(frozen=True)
class KernelChain:
    genus: int
    method: str
    levels: tuple[KernelLevel, ...]

    def level(self, k: int) -> KernelLevel:
        for lv in self.levels:
            if lv.k == k:
                return lv
        raise IndexOutOfRange(f"chain has no level {k}")

    def to_json(self) -> dict:
        pairs = sym_pairs(self.genus)
        levels = []
        for lv in self.levels:
            basis = [
                {
                    f"{i},{j}": rat_to_string(value)
                    for (i, j), value in zip(pairs, vec)
                    if value != 0
                }
                for vec in lv.basis
            ]
            levels.append(
                {
                    "k": lv.k,
                    "dimension": lv.dimension,
                    "rank": lv.rank,
                    "basis": basis,
                }
            )
        return {"genus": self.genus, "method": self.method, "levels": levels}


def max_level(genus: int) -> int:
    return (genus - 1) // 2


def kernel_dimension_formula(genus: int, k: int) -> int:
    return quadric_space_dimension(genus) - k * (2 * genus - 2 * k - 3)


def rank_formula(genus: int, k: int) -> int:
    return 2 * genus - (4 * k + 1)


@lru_cache(maxsize=None)
def kernel_via_equations(genus: int, k_max: int | None = None) -> KernelChain:
    """Kernel chain of the even Gaussian maps, closed-form equations route."""
    if k_max is None:
        k_max = max_level(genus)
    dim = quadric_space_dimension(genus)
    identity = tuple(
        tuple(Fraction(1 if c == r else 0) for c in range(dim)) for r in range(dim)
    )
    domain_dim = genus * (genus + 1) // 2
    levels = [KernelLevel(k=0, dimension=dim, rank=domain_dim - dim, basis=identity)]
    basis: tuple[Vector, ...] = identity
    for k in range(1, k_max + 1):
        system = kernel_equations(genus, k)
        restricted = RatMatrix.from_rows(
            [[dot(row, b) for b in basis] for row in system.rows],
            ncols=len(basis),
        )
        inner = kernel_basis(restricted)
        lifted = [
            tuple(
                sum((y * b[c] for y, b in zip(vec, basis)), Fraction(0))
                for c in range(dim)
            )
            for vec in inner
        ]
        new_basis = canonicalize_span(lifted, dim)
        levels.append(
            KernelLevel(
                k=k,
                dimension=len(new_basis),
                rank=len(basis) - len(new_basis),
                basis=new_basis,
            )
        )
        basis = new_basis
    return KernelChain(genus=genus, method="equations", levels=tuple(levels))


def _oracle_rows(genus: int, bound: int) -> list[Vector]:
    """Rows of the raw identity system: all (h, n) with h >= n, h+n <= bound,
    every x-degree; entries are per-basis-quadric constraint coefficients."""
    pairs = sym_pairs(genus)
    entries = [_c_entries(i, j) for (i, j) in pairs]
    rows: list[Vector] = []
    for total in range(bound + 1):
        for n in range(total // 2 + 1):
            h = total - n
            for e in range(0, 2 * genus - 1 - total):
                row = []
                for slots in entries:
                    acc = Fraction(0)
                    for alpha, beta, weight in slots:
                        if alpha + beta == e + total:
                            acc += weight * falling(alpha, h) * falling(beta, n)
                    row.append(acc)
                if any(row):
                    rows.append(tuple(row))
    return rows


def kernel_via_polynomial_oracle(genus: int, k: int) -> tuple[Vector, ...]:
    """Canonical basis of Ker mu_2k computed from raw derivative identities."""
    if k < 0:
        raise IndexOutOfRange(f"level must be nonnegative, got {k}")
    dim = quadric_space_dimension(genus)
    rows = _oracle_rows(genus, 2 * k + 1)
    if not rows:
        return tuple(
            tuple(Fraction(1 if c == r else 0) for c in range(dim))
            for r in range(dim)
        )
    return kernel_basis(RatMatrix.from_rows(rows, ncols=dim))


def oracle_residuals(q: QuadricI2, bound: int) -> list[tuple[int, int, Poly]]:
    """Nonzero identity polynomials sum c_ab f^(h) f^(n) for h+n <= bound."""
    genus = q.genus
    pairs = sym_pairs(genus)
    bad: list[tuple[int, int, Poly]] = []
    for total in range(bound + 1):
        for n in range(total // 2 + 1):
            h = total - n
            coeffs = [Fraction(0)] * (2 * genus - 1)
            for (i, j), a in zip(pairs, q.a_coords):
                if a == 0:
                    continue
                for alpha, beta, weight in _c_entries(i, j):
                    t = falling(alpha, h) * falling(beta, n)
                    if t:
                        coeffs[alpha + beta - total] += a * weight * t
            poly = Poly.from_coeffs(coeffs)
            if not poly.is_zero():
                bad.append((h, n, poly))
    return bad


def is_in_kernel(q: QuadricI2, k: int) -> bool:
    """Membership in Ker mu_2k via the raw identities (route-independent)."""
    return not oracle_residuals(q, 2 * k + 1)


# -- rank table --------------------------------------------------------------


@dataclass(frozen=True)
class RankRow:
    genus: int
    k: int
    rank: int
    dim_ker: int
    rank_formula_ok: bool


@dataclass(frozen=True)
class RankTable:
    rows: tuple[RankRow, ...]
    domain_zero_from: tuple[tuple[int, int], ...]


def rank_table(g_min: int, g_max: int, k_filter: int | None = None) -> RankTable:
    if g_min < 3 or g_max < g_min:
        raise IndexOutOfRange(f"bad genus range {g_min}..{g_max}")
    rows: list[RankRow] = []
    notes: list[tuple[int, int]] = []
    for genus in range(g_min, g_max + 1):
        chain = kernel_via_equations(genus)
        for lv in chain.levels:
            if k_filter is not None and lv.k != k_filter:
                continue
            ok = lv.rank == rank_formula(genus, lv.k) and lv.dimension == kernel_dimension_formula(genus, lv.k)
            rows.append(
                RankRow(
                    genus=genus,
                    k=lv.k,
                    rank=lv.rank,
                    dim_ker=lv.dimension,
                    rank_formula_ok=ok,
                )
            )
        notes.append((genus, max_level(genus) + 1))
    return RankTable(rows=tuple(rows), domain_zero_from=tuple(notes))


# -- evaluation polynomials and the factorization identity -------------------


def mu_eval_polynomial(q: QuadricI2, k: int, check_membership: bool = True) -> Poly:
    """x-chart polynomial representing mu_2k on a quadric.

    The representative with n derivatives on the second factor is
    (-1)^n sum c_ab f_a^(2k-n) f_b^(n); on the correct domain (the
    previous kernel) the representatives for n in {0, k, 2k} coincide,
    and this is asserted, not assumed.
    """
    if k < 0:
        raise IndexOutOfRange(f"level must be nonnegative, got {k}")
    if check_membership and k >= 1 and oracle_residuals(q, 2 * k - 1):
        raise NotInPreviousKernel(
            f"quadric is not in the level-{k - 1} kernel; mu_{2 * k} undefined on it"
        )
    genus = q.genus
    pairs = sym_pairs(genus)

    def rep(n: int) -> Poly:
        sign = -1 if n % 2 else 1
        coeffs = [Fraction(0)] * (2 * genus - 1)
        for (i, j), a in zip(pairs, q.a_coords):
            if a == 0:
                continue
            for alpha, beta, weight in _c_entries(i, j):
                t = falling(alpha, 2 * k - n) * falling(beta, n)
                if t:
                    coeffs[alpha + beta - 2 * k] += sign * a * weight * t
        return Poly.from_coeffs(coeffs)

    reps = {n: rep(n) for n in sorted({0, k, 2 * k})}
    first = reps[0]
    for n, p in reps.items():
        if p != first:
            raise AssertionError(
                f"representative mismatch for mu_{2 * k}: n=0 gives {first.to_string()}, "
                f"n={n} gives {p.to_string()}"
            )
    return first


@dataclass(frozen=True)
class FactorizationCheck:
    genus: int
    k: int
    lhs: Poly
    rhs: Poly
    constant: Fraction | None
    proportional: bool
    zero_iff_zero: bool

    @property
    def ok(self) -> bool:
        return self.proportional and self.zero_iff_zero


def factorization_check(q: QuadricI2, k: int) -> FactorizationCheck:
    """Check that x^2 * mu_{2k+2}(Q) factors through the twisted odd map.

    For Q in Ker mu_2k the level-(k+1) evaluation polynomial times x^2
    must be a constant multiple (independent of Q) of (k+1) times

        sum a_ij (falling(i,2k+1) - falling(j,2k+1)) x^{i+j-2k-1},

    the (2k+1)-st twisted-map polynomial of the same coordinates. The
    exact constant is returned so callers can pin it across inputs.
    """
    if not is_in_kernel(q, k):
        raise NotInKernel(f"quadric is not in Ker mu_{2 * k}")
    genus = q.genus
    lhs = Poly.monomial(2) * mu_eval_polynomial(q, k + 1, check_membership=False)
    coeffs = [Fraction(0)] * (2 * genus)
    for (i, j), a in zip(sym_pairs(genus), q.a_coords):
        if a == 0:
            continue
        t = falling(i, 2 * k + 1) - falling(j, 2 * k + 1)
        if t:
            exponent = i + j - 2 * k - 1
            coeffs[exponent] += a * t
    rhs = Poly.from_coeffs(coeffs).scale(k + 1)
    if rhs.is_zero() or lhs.is_zero():
        return FactorizationCheck(
            genus=genus,
            k=k,
            lhs=lhs,
            rhs=rhs,
            constant=None,
            proportional=lhs.is_zero() and rhs.is_zero(),
            zero_iff_zero=lhs.is_zero() == rhs.is_zero(),
        )
    pivot = next(e for e in range(rhs.degree + 1) if rhs.coefficient(e) != 0)
    constant = lhs.coefficient(pivot) / rhs.coefficient(pivot)
    return FactorizationCheck(
        genus=genus,
        k=k,
        lhs=lhs,
        rhs=rhs,
        constant=constant,
        proportional=lhs == rhs.scale(constant),
        zero_iff_zero=True,
    )


# -- support of kernel quadrics in decomposable coordinates ------------------


@dataclass(frozen=True)
class BSupportCheck:
    genus: int
    k: int
    bound: int
    offenders: tuple[tuple[int, int], ...]

    @property
    def ok(self) -> bool:
        return not self.offenders


def b_support_check(q: QuadricI2, k: int) -> BSupportCheck:
    """Kernel quadrics have no decomposable coordinates of high weight.

    For Q in Ker mu_2k every b-coordinate with index sum at least
    2g-2k-2 must vanish; the support lives in index sums <= 2g-2k-3.
    """
    if not is_in_kernel(q, k):
        raise NotInKernel(f"quadric is not in Ker mu_{2 * k}")
    genus = q.genus
    bound = 2 * genus - 2 * k - 3
    offenders = tuple(
        (i, j)
        for (i, j) in sym_pairs(genus)
        if i + j > bound and q.b(i, j) != 0
    )
    return BSupportCheck(genus=genus, k=k, bound=bound, offenders=offenders)


# -- odd maps ----------------------------------------------------------------


@dataclass(frozen=True)
class OddMapResult:
    genus: int
    order: int
    domain_dim: int
    kernel_dim: int
    rank: int
    basis: tuple[Vector, ...]


def _odd_rows(genus: int, bound: int) -> list[Vector]:
    pairs = wedge_pairs(genus)
    rows: list[Vector] = []
    for total in range(1, bound + 1):
        for n in range(0, (total + 1) // 2):
            h = total - n
            for e in range(0, 2 * genus - 1 - total):
                row = []
                for (i, j) in pairs:
                    if i + j - total == e:
                        row.append(
                            Fraction(
                                falling(i, h) * falling(j, n)
                                - falling(i, n) * falling(j, h)
                            )
                        )
                    else:
                        row.append(Fraction(0))
                if any(row):
                    rows.append(tuple(row))
    return rows


def odd_kernel_and_rank(genus: int, order: int) -> OddMapResult:
    """Kernel and rank of the odd Gaussian map of the given order.

    The order must be odd; the map of order m is defined on the kernel
    of the order-(m-2) map (the full exterior square for m = 1), and its
    kernel is cut out by the x-chart identities with h + n <= m + 1.
    """
    if order < 1 or order % 2 == 0:
        raise InvalidIndex(f"odd map order must be odd and positive, got {order}")
    dim = genus * (genus - 1) // 2
    kernel = kernel_basis(
        RatMatrix.from_rows(_odd_rows(genus, order + 1), ncols=dim)
    )
    if order == 1:
        previous_dim = dim
    else:
        previous = kernel_basis(
            RatMatrix.from_rows(_odd_rows(genus, order - 1), ncols=dim)
        )
        previous_dim = len(previous)
    return OddMapResult(
        genus=genus,
        order=order,
        domain_dim=previous_dim,
        kernel_dim=len(kernel),
        rank=previous_dim - len(kernel),
        basis=kernel,
    )


def wronskian_rank_oracle(genus: int, curve: Curve) -> int:
    """Rank of the first odd map from exact Wronskian jets on a curve.

    The images W(alpha_i, alpha_j) are sections of a bundle of degree
    6g-6, so jets at the base point through order 6g-1 separate them;
    the rank of the jet matrix is the rank of the map.
    """
    if curve.genus != genus:
        raise IndexOutOfRange("curve genus does not match")
    top = 6 * genus - 1
    table = canonical_derivatives(curve, top + 1)
    pairs = wedge_pairs(genus)
    rows: list[list[Fraction]] = []
    for e in range(1, top + 1, 2):
        row = []
        for (i, j) in pairs:
            acc = Fraction(0)
            for c in range(e + 1):
                acc += comb(e, c) * (
                    table[i][c + 1] * table[j][e - c]
                    - table[i][c] * table[j][e - c + 1]
                )
            row.append(acc)
        rows.append(row)
    return matrix_rank(RatMatrix.from_rows(rows, ncols=len(pairs)))
