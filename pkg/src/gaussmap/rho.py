"""Second fundamental form on higher Schiffer variations at the Weierstrass point.

Everything here evaluates exact derivative pairings of quadrics at the
distinguished Weierstrass point p = (0, 0) and combines them into the
threshold-licensed evaluation of the second fundamental form rho on pairs
of odd Schiffer variations xi_p^n.  All values are rational multipliers of
2*pi*i; no transcendental constant ever enters the arithmetic.

Conventions («z» is the local coordinate with z**2 = x * G(x)):

* D(h, l) = sum_{a,b} c_{ab} g_a^(h)(0) g_b^(l)(0) over the symmetric
  tensor of the quadric in the canonical dz-frame.
* The vanishing threshold of a quadric is the largest m with D(h, l) = 0
  for every h + l <= m; evaluating rho on xi^n (.) xi^r is licensed only
  when n + r <= threshold + 1, otherwise `BeyondThreshold` is raised.
* W(a, b) is the antisymmetrised pairing of the omega-frame functions; it
  drives the closed-form coefficient vectors of the witness and diagonal
  functionals through the product rule for g_{alpha} = x * (omega part).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .curve import (
    Curve,
    canonical_derivatives,
    expand_canonical,
    omega_derivatives,
    x_derivatives,
    x_of_z,
)
from .errors import (
    BeyondThreshold,
    InvalidIndex,
    NoWitnessFound,
    ThresholdNotExtended,
)
from .gaussian import b_support_check, kernel_via_equations, mu_eval_polynomial
from .linalg import RatMatrix, Vector, canonicalize_span, kernel_basis, matrix_rank
from .quadrics import QuadricI2, basis_quadric, quadric_from_vector, sym_pairs
from .rationals import rat_to_string
from .series import TruncatedSeries

ZERO = Fraction(0)


# -- Schiffer indices and derivative pairings ---------------------------------


@dataclass(frozen=True)
class SchifferIndex:
    """Order of an invariant higher Schiffer variation xi_p^n (n odd)."""

    n: int

    def __post_init__(self) -> None:
        if self.n < 1 or self.n % 2 == 0:
            raise InvalidIndex(
                f"Schiffer order must be an odd positive integer, got {self.n}"
            )


def _odd_order(n) -> int:
    if isinstance(n, SchifferIndex):
        return n.n
    return SchifferIndex(int(n)).n


@lru_cache(maxsize=None)
def _sym_entries(q: QuadricI2) -> tuple[tuple[int, int, Fraction], ...]:
    tensor = q.sym_tensor()
    return tuple(
        (a, b, value)
        for a, row in enumerate(tensor)
        for b, value in enumerate(row)
        if value
    )


@lru_cache(maxsize=None)
def derivative_sum(q: QuadricI2, curve: Curve, h: int, l: int) -> Fraction:
    """D(h, l): the (h, l) derivative pairing of the quadric at p."""
    if h < 0 or l < 0:
        raise InvalidIndex("derivative orders must be non-negative")
    table = canonical_derivatives(curve, max(h, l))
    total = ZERO
    for a, b, coeff in _sym_entries(q):
        total += coeff * table[a][h] * table[b][l]
    return total


@dataclass(frozen=True)
class ThresholdInfo:
    threshold: int
    at_cap: bool
    first_nonzero: tuple[int, int, Fraction] | None


@dataclass(frozen=True)
class DerivativePairing:
    """Full pairing table of one quadric on one curve up to a total order."""

    quadric: str
    curve: str
    bound: int
    entries: tuple[tuple[int, int, Fraction], ...]
    threshold: int
    at_cap: bool
    first_nonzero: tuple[int, int, Fraction] | None

    def to_json(self) -> dict:
        return {
            "quadric": self.quadric,
            "curve": self.curve,
            "bound": self.bound,
            "threshold": self.threshold,
            "at_cap": self.at_cap,
            "nonzero_entries": {
                f"{h},{l}": rat_to_string(v) for (h, l, v) in self.entries
            },
        }


def threshold_info(q: QuadricI2, curve: Curve, cap: int) -> ThresholdInfo:
    """Largest m <= cap with D(h, l) = 0 for all h + l <= m."""
    if cap < 0:
        raise InvalidIndex("threshold cap must be non-negative")
    for total in range(cap + 1):
        for h in range(total // 2, total + 1):
            value = derivative_sum(q, curve, h, total - h)
            if value:
                return ThresholdInfo(
                    threshold=total - 1,
                    at_cap=False,
                    first_nonzero=(h, total - h, value),
                )
    return ThresholdInfo(threshold=cap, at_cap=True, first_nonzero=None)


def vanishing_threshold(q: QuadricI2, curve: Curve, cap: int) -> int:
    return threshold_info(q, curve, cap).threshold


def threshold_with_policy(q: QuadricI2, curve: Curve, k: int) -> ThresholdInfo:
    """Threshold scan with the default cap 4k+8, auto-raised once to 2*(4k+8)."""
    cap = 4 * k + 8
    info = threshold_info(q, curve, cap)
    if info.at_cap:
        info = threshold_info(q, curve, 2 * cap)
    return info


def pairing_table(q: QuadricI2, curve: Curve, bound: int) -> DerivativePairing:
    entries = []
    first = None
    threshold = bound
    at_cap = True
    for total in range(bound + 1):
        for h in range(total // 2, total + 1):
            value = derivative_sum(q, curve, h, total - h)
            if value:
                entries.append((h, total - h, value))
                if first is None:
                    first = (h, total - h, value)
                    threshold = total - 1
                    at_cap = False
    return DerivativePairing(
        quadric=q.label(),
        curve=curve.label(),
        bound=bound,
        entries=tuple(entries),
        threshold=threshold,
        at_cap=at_cap,
        first_nonzero=first,
    )


# -- licensed evaluation of rho ------------------------------------------------


@dataclass(frozen=True)
class RhoValue:
    """Exact rho evaluation: the true value is `value * 2*pi*i`."""

    n: int
    r: int
    value: Fraction
    licensing_threshold: int

    def __post_init__(self) -> None:
        if self.n + self.r > self.licensing_threshold + 1:
            raise InvalidIndex(
                "rho value emitted beyond its licensing threshold"
            )

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "value": rat_to_string(self.value),
            "licensing_threshold": self.licensing_threshold,
            "unit": "2*pi*i",
        }


def rho_pair(q: QuadricI2, curve: Curve, n, r) -> RhoValue:
    """rho(Q)(xi_p^n (.) xi_p^r) / (2*pi*i), licensed by the threshold.

    The evaluation formula needs every pairing of total order below n + r
    to vanish; if one does not, the formula is simply not available and
    `BeyondThreshold` is raised (never silently extrapolated).  The sum is
    computed from both endpoints and must agree.
    """
    n = _odd_order(n)
    r = _odd_order(r)
    m1 = n + r
    for total in range(m1):
        for h in range(total // 2, total + 1):
            value = derivative_sum(q, curve, h, total - h)
            if value:
                raise BeyondThreshold(
                    f"pairing D({h},{total - h}) = {rat_to_string(value)} "
                    f"blocks the (xi^{n}, xi^{r}) evaluation",
                    h=h,
                    l=total - h,
                    value=rat_to_string(value),
                )

    def one_sided(a: int) -> Fraction:
        acc = ZERO
        for j in range(a):
            d = derivative_sum(q, curve, m1 - j, j)
            if d:
                acc += d * Fraction(a - j, factorial(j) * factorial(m1 - j))
        return acc

    value = one_sided(n)
    other = one_sided(r)
    if value != other:
        raise AssertionError(
            f"rho symmetry failed for orders ({n},{r}): "
            f"{rat_to_string(value)} != {rat_to_string(other)}"
        )
    saturated = all(
        derivative_sum(q, curve, h, m1 - h) == 0 for h in range((m1 // 2) + 1)
    )
    if saturated and value != 0:
        raise AssertionError(
            "vanishing pairings at the pair total must force a zero value"
        )
    licensing = m1 if saturated else m1 - 1
    return RhoValue(n=n, r=r, value=value, licensing_threshold=licensing)


# -- omega-frame pairings and the exact reduction of D(h, l) -------------------


def omega_wronskian_sum(q: QuadricI2, curve: Curve, a: int, b: int) -> Fraction:
    """W(a, b): antisymmetrised omega-pairing, from the canonical table.

    The omega-frame function of omega_m coincides with the canonical frame
    function of alpha_{g-m-1} (the model has t * omega_m = alpha_{g-m-1}
    on the nose), so row g-m-1 of the canonical table supplies the jets.
    """
    genus = q.genus
    table = canonical_derivatives(curve, max(a, b))
    total = ZERO
    for (i, j), coeff in zip(sym_pairs(genus), q.b_coords()):
        if not coeff:
            continue
        ra = genus - i - 1
        rb = genus - j - 1
        total += coeff * (
            table[ra][a] * table[rb][b] - table[rb][a] * table[ra][b]
        )
    return total


def pairing_reduction(q: QuadricI2, curve: Curve, h: int, l: int) -> Fraction:
    """D(h, l) recomputed through the product rule in decomposable form.

    Writing each canonical function as x * (omega function) or (omega
    function) and expanding the h-th and l-th derivatives of the products
    leaves only even x-jets >= 2; this is the identity behind the witness
    coefficient formulas and must agree with `derivative_sum` exactly.
    """
    sigma = x_derivatives(curve, max(h, l))
    acc = ZERO
    for c in range(2, h + 1, 2):
        if sigma[c]:
            acc += Fraction(comb(h, c), 2) * sigma[c] * omega_wronskian_sum(
                q, curve, h - c, l
            )
    for d in range(2, l + 1, 2):
        if sigma[d]:
            acc -= Fraction(comb(l, d), 2) * sigma[d] * omega_wronskian_sum(
                q, curve, h, l - d
            )
    return acc


def _accumulate_wvec(
    vec: dict[tuple[int, int], Fraction],
    table,
    genus: int,
    a: int,
    b: int,
    weight: Fraction,
) -> None:
    for (i, j) in vec:
        ra = genus - i - 1
        rb = genus - j - 1
        value = table[ra][a] * table[rb][b] - table[rb][a] * table[ra][b]
        if value:
            vec[(i, j)] += weight * value


def rho_reduction_vector(
    curve: Curve, genus: int, n: int, r: int
) -> dict[tuple[int, int], Fraction]:
    """The rho(., xi^n (.) xi^r) formula as an exact vector in b-coordinates.

    Valid on all of I_2 (it is the pairing identity summed with the rho
    weights); restricting to a kernel merely kills the spillover entries.
    The shorter endpoint of the evaluation formula is used.
    """
    m1 = n + r
    a_end = min(n, r)
    sigma = x_derivatives(curve, m1)
    table = canonical_derivatives(curve, m1)
    vec: dict[tuple[int, int], Fraction] = {
        pair: ZERO for pair in sym_pairs(genus)
    }
    for j in range(a_end):
        w = Fraction(a_end - j, factorial(j) * factorial(m1 - j))
        h = m1 - j
        for c in range(2, h + 1, 2):
            if sigma[c]:
                weight = w * Fraction(comb(h, c), 2) * sigma[c]
                _accumulate_wvec(vec, table, genus, h - c, j, weight)
        for d in range(2, j + 1, 2):
            if sigma[d]:
                weight = -w * Fraction(comb(j, d), 2) * sigma[d]
                _accumulate_wvec(vec, table, genus, h, j - d, weight)
    return vec


# -- isotropy ------------------------------------------------------------------


def _require_level(genus: int, k: int) -> None:
    if k < 0 or 2 * k > genus - 3:
        raise InvalidIndex(
            f"level k = {k} outside 0..floor((g-3)/2) for genus {genus}"
        )


def _kernel_quadrics(genus: int, k: int) -> tuple[QuadricI2, ...]:
    level = kernel_via_equations(genus).level(k)
    return tuple(quadric_from_vector(genus, vec) for vec in level.basis)


@dataclass(frozen=True)
class IsotropyResult:
    genus: int
    k: int
    curve: str
    basis_size: int
    thresholds: tuple[ThresholdInfo, ...]
    pair_values: tuple[tuple[int, int, int, Fraction], ...]
    failures: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.failures


def isotropy_suite(genus: int, k: int, curve: Curve) -> IsotropyResult:
    """All licensed rho pairs with odd total <= 4k+3 vanish on Ker mu_2k."""
    _require_level(genus, k)
    quads = _kernel_quadrics(genus, k)
    failures = []
    thresholds = []
    for index, q in enumerate(quads):
        info = threshold_with_policy(q, curve, k)
        thresholds.append(info)
        if info.threshold < 4 * k + 3:
            failures.append(
                f"basis[{index}] threshold {info.threshold} < {4 * k + 3}"
            )
    checks = []
    for index, q in enumerate(quads):
        for n in range(1, 4 * k + 4, 2):
            for r in range(n, 4 * k + 4 - n, 2):
                value = rho_pair(q, curve, n, r).value
                checks.append((index, n, r, value))
                if value:
                    failures.append(
                        f"basis[{index}] rho(xi^{n}, xi^{r}) = "
                        f"{rat_to_string(value)} != 0"
                    )
    return IsotropyResult(
        genus=genus,
        k=k,
        curve=curve.label(),
        basis_size=len(quads),
        thresholds=tuple(thresholds),
        pair_values=tuple(checks),
        failures=tuple(failures),
    )


# -- the witness functional and its closed form --------------------------------


@dataclass(frozen=True)
class Functional:
    """A rho evaluation as a linear functional in b-coordinates.

    `coefficients` is the machine vector: the entries of the exact
    reduction of the evaluation formula at the support pairs.  It
    reproduces `values` on the domain basis exactly (after the spillover
    entries die on the kernel).  `closed_form` is the predicted vector
    from the one-line jet formulas; `display_form` carries the textbook
    shape with the odd cubic factors and is compared as a functional on
    the domain, with the per-entry ratios kept as a diagnostic.
    """

    genus: int
    k: int
    pair: tuple[int, int]
    domain: str
    curve: str
    basis: tuple[QuadricI2, ...]
    values: tuple[Fraction, ...]
    support: tuple[tuple[int, int], ...]
    coefficients: tuple[Fraction, ...]
    closed_form: tuple[Fraction, ...]
    nonzero_on_domain: bool
    support_ok: bool
    coefficients_nonzero: bool
    closed_form_ok: bool
    reduction_ok: bool
    display_form: tuple[Fraction, ...] | None = None
    display_factors: tuple[int, ...] | None = None
    display_domain_constant: Fraction | None = None
    display_proportional_on_domain: bool | None = None
    display_entry_ratios: tuple[Fraction | None, ...] | None = None

    def to_json(self) -> dict:
        out = {
            "genus": self.genus,
            "k": self.k,
            "pair": list(self.pair),
            "domain": self.domain,
            "curve": self.curve,
            "dimension": len(self.basis),
            "values": [rat_to_string(v) for v in self.values],
            "support": [f"{i},{j}" for (i, j) in self.support],
            "coefficients": [rat_to_string(c) for c in self.coefficients],
            "closed_form": [rat_to_string(c) for c in self.closed_form],
            "nonzero_on_domain": self.nonzero_on_domain,
            "support_ok": self.support_ok,
            "coefficients_nonzero": self.coefficients_nonzero,
            "closed_form_ok": self.closed_form_ok,
            "reduction_ok": self.reduction_ok,
        }
        if self.display_form is not None:
            out["display_form"] = [rat_to_string(c) for c in self.display_form]
            out["display_factors"] = list(self.display_factors or ())
            out["display_proportional_on_domain"] = (
                self.display_proportional_on_domain
            )
            if self.display_domain_constant is not None:
                out["display_domain_constant"] = rat_to_string(
                    self.display_domain_constant
                )
        return out


def _functional_values_from_vector(
    vec: dict[tuple[int, int], Fraction], q: QuadricI2
) -> Fraction:
    total = ZERO
    for pair, coeff in vec.items():
        if coeff:
            total += coeff * q.b(*pair)
    return total


def _single_constant(
    values: tuple[Fraction, ...], reference: tuple[Fraction, ...]
) -> Fraction | None:
    """c with values = c * reference, if one exists (None otherwise)."""
    constant = None
    for v, ref in zip(values, reference):
        if ref == 0:
            if v != 0:
                return None
            continue
        ratio = v / ref
        if constant is None:
            constant = ratio
        elif constant != ratio:
            return None
    if constant is None:
        # reference vanishes identically; only the zero functional matches
        return ZERO if not any(values) else None
    return constant


def _witness_support(genus: int, k: int) -> tuple[tuple[int, int], ...]:
    return tuple(
        (genus - 2 * k - 3 + u, genus - u)
        for u in range(1, k + 2)
        if 1 <= genus - 2 * k - 3 + u < genus - u <= genus - 1
    )


def _diagonal_support(genus: int, k: int) -> tuple[tuple[int, int], ...]:
    return tuple(
        (genus - 2 * k - 4 + u, genus - u)
        for u in range(1, k + 2)
        if 1 <= genus - 2 * k - 4 + u < genus - u <= genus - 1
    )


def _witness_closed_form(curve: Curve, genus: int, k: int) -> tuple[Fraction, ...]:
    """sigma_2/2 * W-product / ((2u-2)! (4k+4-2u)!), halved once more at u = k+1."""
    table = canonical_derivatives(curve, 4 * k + 4)
    sigma2 = x_derivatives(curve, 2)[2]
    out = []
    for u in range(1, k + 2):
        wval = table[2 * k + 2 - u][4 * k + 4 - 2 * u] * table[u - 1][2 * u - 2]
        denom = 2 * factorial(2 * u - 2) * factorial(4 * k + 4 - 2 * u)
        if u == k + 1:
            denom *= 2
        out.append(sigma2 * wval / denom)
    return tuple(out)


def _diagonal_closed_form(
    curve: Curve, genus: int, k: int, support: tuple[tuple[int, int], ...]
) -> tuple[Fraction, ...]:
    table = canonical_derivatives(curve, 4 * k + 6)
    sigma2 = x_derivatives(curve, 2)[2]
    out = []
    for (i, j) in support:
        u = genus - j
        wval = table[2 * k + 3 - u][4 * k + 6 - 2 * u] * table[u - 1][2 * u - 2]
        denom = 2 * factorial(2 * u - 2) * factorial(4 * k + 6 - 2 * u)
        out.append(sigma2 * wval / denom)
    return tuple(out)


def _witness_display_form(
    curve: Curve, genus: int, k: int
) -> tuple[tuple[Fraction, ...], tuple[int, ...]]:
    """The textbook coefficient shape with the odd cubic integer factors."""
    omega = omega_derivatives(curve, 4 * k + 4)
    out = []
    factors = []
    for u in range(1, k + 1):
        factor = -8 * u**3 + 8 * u**2 * (k + 1) - 4 * k * u - (2 * k + 3)
        factors.append(factor)
        product = (
            omega[genus - 2 * k - 3 + u - 1][4 * k + 4 - 2 * u]
            * omega[genus - u - 1][2 * u - 2]
        )
        out.append(product * Fraction(factor, 2 * factorial(4 * k + 4 - 2 * u)))
    product = (
        omega[genus - k - 2 - 1][2 * k + 2] * omega[genus - k - 1 - 1][2 * k]
    )
    out.append(-product / (2 * factorial(2 * k + 2)))
    return tuple(out), tuple(factors)


@lru_cache(maxsize=None)
def witness_functional(genus: int, k: int, curve: Curve) -> Functional:
    """The xi^{2k+3} (.) xi^{2k+1} evaluation as a functional on Ker mu_2k."""
    _require_level(genus, k)
    quads = _kernel_quadrics(genus, k)
    n, r = 2 * k + 3, 2 * k + 1
    values = tuple(rho_pair(q, curve, n, r).value for q in quads)

    vec = rho_reduction_vector(curve, genus, n, r)
    support = _witness_support(genus, k)
    bound = 2 * genus - 2 * k - 3
    support_ok = all(
        vec[pair] == 0 for pair in vec if pair[0] + pair[1] < bound
    )
    reduction_ok = True
    for q, value in zip(quads, values):
        if not b_support_check(q, k).ok:
            reduction_ok = False
        full = _functional_values_from_vector(vec, q)
        trimmed = sum((vec[pair] * q.b(*pair) for pair in support), ZERO)
        if full != value or trimmed != value:
            reduction_ok = False

    coefficients = tuple(vec[pair] for pair in support)
    closed = _witness_closed_form(curve, genus, k)
    display, factors = _witness_display_form(curve, genus, k)
    display_values = tuple(
        sum((c * q.b(*pair) for c, pair in zip(display, support)), ZERO)
        for q in quads
    )
    constant = _single_constant(values, display_values)
    ratios = tuple(
        (c / d) if d else None for c, d in zip(coefficients, display)
    )
    return Functional(
        genus=genus,
        k=k,
        pair=(n, r),
        domain="kernel",
        curve=curve.label(),
        basis=quads,
        values=values,
        support=support,
        coefficients=coefficients,
        closed_form=closed,
        nonzero_on_domain=any(values),
        support_ok=support_ok,
        coefficients_nonzero=all(coefficients),
        closed_form_ok=coefficients == closed,
        reduction_ok=reduction_ok,
        display_form=display,
        display_factors=factors,
        display_domain_constant=constant,
        display_proportional_on_domain=constant is not None,
        display_entry_ratios=ratios,
    )


# -- hyperplanes A_{k,0} and A_{k,0,0} ------------------------------------------


@dataclass(frozen=True)
class HyperplaneResult:
    genus: int
    k: int
    curve: str
    functional: Functional
    basis: tuple[QuadricI2, ...]
    vectors: tuple[Vector, ...]
    dimension: int
    codimension_ok: bool
    support_coordinates_vanish: bool

    def to_json(self) -> dict:
        pairs = sym_pairs(self.genus)
        return {
            "genus": self.genus,
            "k": self.k,
            "curve": self.curve,
            "dimension": self.dimension,
            "codimension_ok": self.codimension_ok,
            "support_coordinates_vanish": self.support_coordinates_vanish,
            "basis": [
                {
                    f"{i},{j}": rat_to_string(value)
                    for (i, j), value in zip(pairs, vecr)
                    if value
                }
                for vecr in self.vectors
            ],
        }


def _restrict_to_functional_kernel(
    domain_vectors: tuple[Vector, ...],
    values: tuple[Fraction, ...],
    ncols: int,
) -> tuple[Vector, ...]:
    """Canonical basis of {sum c_i B_i : sum c_i values_i = 0}."""
    if not domain_vectors:
        return ()
    row = RatMatrix.from_rows([tuple(values)], ncols=len(values))
    inner = kernel_basis(row)
    lifted = []
    for coeffs in inner:
        vec = tuple(
            sum((c * bv[col] for c, bv in zip(coeffs, domain_vectors)), ZERO)
            for col in range(ncols)
        )
        lifted.append(vec)
    return canonicalize_span(lifted, ncols)


@lru_cache(maxsize=None)
def witness_hyperplane(genus: int, k: int, curve: Curve) -> HyperplaneResult:
    """A_{k,0}: the kernel of the witness functional inside Ker mu_2k.

    The cut is the single rho row; that every support coordinate then
    vanishes on the result (the textbook description of A_{k,0} by the
    equations a_{u,2k+3-u} = 0) is asserted as a consequence, not imposed.
    """
    functional = witness_functional(genus, k, curve)
    level = kernel_via_equations(genus).level(k)
    ncols = len(sym_pairs(genus))
    vectors = _restrict_to_functional_kernel(
        level.basis, functional.values, ncols
    )
    quads = tuple(quadric_from_vector(genus, vec) for vec in vectors)
    support_vanish = all(
        q.b(*pair) == 0 for q in quads for pair in functional.support
    )
    return HyperplaneResult(
        genus=genus,
        k=k,
        curve=curve.label(),
        functional=functional,
        basis=quads,
        vectors=vectors,
        dimension=len(vectors),
        codimension_ok=len(vectors) == level.dimension - 1,
        support_coordinates_vanish=support_vanish,
    )


@dataclass(frozen=True)
class DiagonalResult:
    functional: Functional
    hyperplane: HyperplaneResult
    a00_vectors: tuple[Vector, ...]
    a00_dimension: int
    codimension: int

    def to_json(self) -> dict:
        pairs = sym_pairs(self.functional.genus)
        return {
            "functional": self.functional.to_json(),
            "hyperplane": self.hyperplane.to_json(),
            "a00_dimension": self.a00_dimension,
            "codimension": self.codimension,
            "a00_basis": [
                {
                    f"{i},{j}": rat_to_string(value)
                    for (i, j), value in zip(pairs, vecr)
                    if value
                }
                for vecr in self.a00_vectors
            ],
        }


@lru_cache(maxsize=None)
def diagonal_functional(genus: int, k: int, curve: Curve) -> DiagonalResult:
    """The xi^{2k+3} (.) xi^{2k+3} evaluation on A_{k,0}, and A_{k,0,0}.

    Members of A_{k,0} must have their vanishing threshold extended by
    two orders before the diagonal pair is licensed; a member that fails
    this is a falsification event raised as ThresholdNotExtended.
    """
    _require_level(genus, k)
    hyper = witness_hyperplane(genus, k, curve)
    n = 2 * k + 3
    for index, q in enumerate(hyper.basis):
        info = threshold_info(q, curve, 4 * k + 5)
        if not info.at_cap:
            h, l, value = info.first_nonzero
            raise ThresholdNotExtended(
                f"A_{{{k},0}} basis[{index}] has D({h},{l}) = "
                f"{rat_to_string(value)}; the diagonal evaluation at "
                f"order {2 * n} is not licensed"
            )
    values = tuple(rho_pair(q, curve, n, n).value for q in hyper.basis)

    vec = rho_reduction_vector(curve, genus, n, n)
    support = _diagonal_support(genus, k)
    bound = 2 * genus - 2 * k - 4
    support_ok = all(
        vec[pair] == 0 for pair in vec if pair[0] + pair[1] < bound
    )
    reduction_ok = True
    for q, value in zip(hyper.basis, values):
        full = _functional_values_from_vector(vec, q)
        trimmed = sum((vec[pair] * q.b(*pair) for pair in support), ZERO)
        if full != value or trimmed != value:
            reduction_ok = False

    coefficients = tuple(vec[pair] for pair in support)
    closed = _diagonal_closed_form(curve, genus, k, support)
    functional = Functional(
        genus=genus,
        k=k,
        pair=(n, n),
        domain="hyperplane",
        curve=curve.label(),
        basis=hyper.basis,
        values=values,
        support=support,
        coefficients=coefficients,
        closed_form=closed,
        nonzero_on_domain=any(values),
        support_ok=support_ok,
        coefficients_nonzero=all(coefficients),
        closed_form_ok=coefficients == closed,
        reduction_ok=reduction_ok,
    )
    ncols = len(sym_pairs(genus))
    a00 = _restrict_to_functional_kernel(hyper.vectors, values, ncols)
    return DiagonalResult(
        functional=functional,
        hyperplane=hyper,
        a00_vectors=a00,
        a00_dimension=len(a00),
        codimension=hyper.dimension - len(a00),
    )


# -- asymptotic certificates ----------------------------------------------------


@dataclass(frozen=True)
class AsymptoticCertificate:
    genus: int
    curve: str
    direction: tuple[Fraction, ...]
    verdict: str
    top_order: int
    witness: QuadricI2 | None
    witness_pair_value: Fraction | None
    total_value: Fraction | None
    cross_terms: tuple[tuple[int, int, Fraction], ...]
    basis_zero_count: int | None

    def __post_init__(self) -> None:
        if self.verdict == "not_asymptotic":
            if self.witness is None or not self.total_value:
                raise AssertionError(
                    "a not_asymptotic certificate needs a nonzero witness"
                )
        elif self.verdict != "asymptotic":
            raise InvalidIndex(f"unknown verdict {self.verdict!r}")

    def to_json(self) -> dict:
        out = {
            "genus": self.genus,
            "curve": self.curve,
            "direction": [rat_to_string(c) for c in self.direction],
            "verdict": self.verdict,
            "top_order": self.top_order,
            "cross_terms": [
                {"n": n, "r": r, "value": rat_to_string(v)}
                for (n, r, v) in self.cross_terms
            ],
        }
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
            out["witness_pair_value"] = rat_to_string(self.witness_pair_value)
            out["total_value"] = rat_to_string(self.total_value)
        if self.basis_zero_count is not None:
            out["basis_zero_count"] = self.basis_zero_count
        return out


def direction_length(genus: int) -> int:
    """Coefficients index xi^1, xi^3, ..., up to xi^{g-1} or xi^{g-2}."""
    return genus // 2


def asymptotic_classify(curve: Curve, lambdas) -> AsymptoticCertificate:
    """Certify a direction sum(lambda_i xi^{2i+1}) asymptotic or not.

    A pure xi^1 direction is certified asymptotic by checking the licensed
    zero rho(Q)(xi^1 (.) xi^1) = 0 on every basis quadric.  Any direction
    with top odd order 2k+1 >= 3 is certified not_asymptotic through one
    witness quadric in A_{k-1,0} off the diagonal hyperplane: all its
    licensed cross pairs are exact zeros and the (2k+1, 2k+1) value is
    exactly nonzero, so the full evaluation is lambda_top^2 times it.
    """
    genus = curve.genus
    expected = direction_length(genus)
    direction = tuple(Fraction(c) for c in lambdas)
    if len(direction) != expected:
        raise InvalidIndex(
            f"direction for genus {genus} needs {expected} odd coefficients"
        )
    if not any(direction):
        raise InvalidIndex("the zero direction has no classification")
    top = max(idx for idx, c in enumerate(direction) if c)
    if top == 0:
        checks = []
        for (i, j) in sym_pairs(genus):
            value = rho_pair(basis_quadric(genus, i, j), curve, 1, 1).value
            checks.append(value)
        if any(checks):
            raise AssertionError(
                "rho(Q)(xi^1 (.) xi^1) must vanish at a Weierstrass point"
            )
        return AsymptoticCertificate(
            genus=genus,
            curve=curve.label(),
            direction=direction,
            verdict="asymptotic",
            top_order=1,
            witness=None,
            witness_pair_value=None,
            total_value=None,
            cross_terms=(),
            basis_zero_count=len(checks),
        )

    k = top
    diag = diagonal_functional(genus, k - 1, curve)
    witness = None
    pair_value = None
    for q, value in zip(diag.hyperplane.basis, diag.functional.values):
        if value:
            witness = q
            pair_value = value
            break
    if witness is None:
        raise NoWitnessFound(
            f"the diagonal functional vanishes on all of A_{{{k - 1},0}} "
            f"for genus {genus}; no certificate witness exists"
        )
    present = [idx for idx, c in enumerate(direction) if c]
    cross = []
    for pos, i in enumerate(present):
        for j in present[pos:]:
            if (i, j) == (k, k):
                continue
            value = rho_pair(witness, curve, 2 * i + 1, 2 * j + 1).value
            cross.append((2 * i + 1, 2 * j + 1, value))
            if value:
                raise AssertionError(
                    f"licensed cross pair (xi^{2 * i + 1}, xi^{2 * j + 1}) "
                    "must vanish below the witness threshold"
                )
    total = direction[top] ** 2 * pair_value
    return AsymptoticCertificate(
        genus=genus,
        curve=curve.label(),
        direction=direction,
        verdict="not_asymptotic",
        top_order=2 * k + 1,
        witness=witness,
        witness_pair_value=pair_value,
        total_value=total,
        cross_terms=tuple(cross),
        basis_zero_count=None,
    )


# -- cup products with Schiffer variations --------------------------------------


@dataclass(frozen=True)
class CupRank:
    n: int
    genus: int
    rank: int
    kernel: tuple[Vector, ...]
    rank_bound_ok: bool
    predicted_kernel_indices: tuple[int, ...]
    containment_ok: bool

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "genus": self.genus,
            "rank": self.rank,
            "rank_bound_ok": self.rank_bound_ok,
            "kernel_dimension": len(self.kernel),
            "predicted_kernel_indices": list(self.predicted_kernel_indices),
            "containment_ok": self.containment_ok,
        }


def cup_rank(curve: Curve, n: int) -> CupRank:
    """Rank and kernel of cup product with xi_p^n on the canonical space.

    The pairing matrix is P_ij = (f_i f_j)^(n-1)(0) / (n-1)! over the
    canonical frame functions; its rank is at most n and its kernel
    contains every alpha_i with 2i >= n (those classes extend across p
    with a zero of order at least n).
    """
    genus = curve.genus
    if n < 1 or n > genus:
        raise InvalidIndex(f"cup order must lie in 1..{genus}, got {n}")
    table = canonical_derivatives(curve, n - 1)
    scale = factorial(n - 1)
    rows = []
    for i in range(genus):
        row = []
        for j in range(genus):
            total = ZERO
            for c in range(n):
                if table[i][c] and table[j][n - 1 - c]:
                    total += comb(n - 1, c) * table[i][c] * table[j][n - 1 - c]
            row.append(total / scale)
        rows.append(tuple(row))
    matrix = RatMatrix.from_rows(rows, ncols=genus)
    rank = matrix_rank(matrix)
    kernel = kernel_basis(matrix)
    predicted = tuple(i for i in range(genus) if 2 * i >= n)
    containment = all(
        all(rows[a][i] == 0 for a in range(genus)) for i in predicted
    )
    return CupRank(
        n=n,
        genus=genus,
        rank=rank,
        kernel=kernel,
        rank_bound_ok=rank <= n,
        predicted_kernel_indices=predicted,
        containment_ok=containment,
    )


# -- independent x-chart cross-check of the first vanishing ---------------------


@dataclass(frozen=True)
class Mu2CrossCheck:
    genus: int
    curve: str
    quadrics: tuple[str, ...]
    rho_values: tuple[Fraction, ...]
    x_chart_vanishes: tuple[bool, ...]
    frames_agree: tuple[bool, ...]
    compared_orders: int

    @property
    def ok(self) -> bool:
        return (
            not any(self.rho_values)
            and all(self.x_chart_vanishes)
            and all(self.frames_agree)
        )


def mu2_cross_check(curve: Curve, order: int = 14) -> Mu2CrossCheck:
    """rho(Q)(xi^1 (.) xi^1) = 0 against the x-chart value of mu_2(Q) at p.

    Route one is the licensed derivative-pairing formula.  Route two takes
    the x-chart polynomial representative of mu_2(Q), composes it with the
    local coordinate and multiplies by the frame transition into the
    z-chart; the resulting series must both vanish at p and agree with the
    z-chart representative built directly from the canonical expansions.
    """
    genus = curve.genus
    x = x_of_z(curve, order)
    xprime = x.derivative()
    frame = xprime * xprime * xprime.shift_down(1) * xprime.shift_down(1)
    expansions = [
        expand_canonical(curve, i, max(order + 2, 2 * genus + 1)).series
        for i in range(genus)
    ]
    labels = []
    rho_values = []
    vanishes = []
    agree = []
    compared = order
    for (i, j) in sym_pairs(genus):
        q = basis_quadric(genus, i, j)
        labels.append(q.label())
        rho_values.append(rho_pair(q, curve, 1, 1).value)
        poly = mu_eval_polynomial(q, 1)
        composite = x.compose_poly(poly) * frame
        zrep = TruncatedSeries.zero(truncation=order)
        for a, b, coeff in _sym_entries(q):
            term = expansions[a].derivative().derivative() * expansions[b]
            zrep = zrep + term.scale(coeff)
        limit = min(composite.truncation, zrep.truncation)
        compared = min(compared, limit)
        vanishes.append(composite.coefficient(0) == 0)
        agree.append(
            all(
                composite.coefficient(e) == zrep.coefficient(e)
                for e in range(limit)
            )
        )
    if compared < 5:
        raise InvalidIndex("cross-check order too small to be meaningful")
    return Mu2CrossCheck(
        genus=genus,
        curve=curve.label(),
        quadrics=tuple(labels),
        rho_values=tuple(rho_values),
        x_chart_vanishes=tuple(vanishes),
        frames_agree=tuple(agree),
        compared_orders=compared,
    )
