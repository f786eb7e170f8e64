"""Truncated power series with explicit, load-bearing truncation orders.

A series is a dense coefficient tuple plus a truncation order N meaning
"coefficients of z^e for e < N are exact; nothing is known from z^N on".
``truncation = None`` marks an exactly known polynomial-like series (all
omitted coefficients are exactly zero).

Two rules are enforced rather than documented away:

* reading a coefficient at or beyond the truncation order is a hard
  error, never silently zero;
* products carry the exact truncation order
  min(N_a + val(b), N_b + val(a)) — multiplying by a high-valuation
  series genuinely extends the trustworthy range, and nothing else does.

Valuation (order of vanishing) fails loudly on a series that is zero to
its truncation order, since no finite amount of known data determines it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import IndexOutOfRange
from .poly import Poly


def _strip(coeffs: tuple[Fraction, ...]) -> tuple[Fraction, ...]:
    n = len(coeffs)
    while n and coeffs[n - 1] == 0:
        n -= 1
    return coeffs[:n]


@dataclass(frozen=True)
class TruncatedSeries:
    coeffs: tuple[Fraction, ...]
    truncation: int | None

    @classmethod
    def make(cls, coeffs, truncation: int | None) -> "TruncatedSeries":
        frozen = tuple(Fraction(c) for c in coeffs)
        if truncation is None:
            return cls(_strip(frozen), None)
        if truncation < 0:
            raise IndexOutOfRange("truncation order must be nonnegative")
        if len(frozen) < truncation:
            frozen = frozen + (Fraction(0),) * (truncation - len(frozen))
        elif len(frozen) > truncation:
            frozen = frozen[:truncation]
        return cls(frozen, truncation)

    @classmethod
    def from_poly(cls, p: Poly, truncation: int | None = None) -> "TruncatedSeries":
        return cls.make(p.coeffs, truncation)

    @classmethod
    def zero(cls, truncation: int | None = None) -> "TruncatedSeries":
        return cls.make((), truncation)

    @classmethod
    def monomial(cls, exponent: int, coeff=1, truncation: int | None = None) -> "TruncatedSeries":
        if exponent < 0:
            raise IndexOutOfRange("monomial exponent must be nonnegative")
        return cls.make((Fraction(0),) * exponent + (Fraction(coeff),), truncation)

    # -- access -----------------------------------------------------------

    def coefficient(self, exponent: int) -> Fraction:
        if exponent < 0:
            raise IndexOutOfRange("negative series exponent")
        if self.truncation is not None and exponent >= self.truncation:
            raise IndexOutOfRange(
                f"coefficient of z^{exponent} requested at truncation order {self.truncation}"
            )
        if exponent >= len(self.coeffs):
            return Fraction(0)
        return self.coeffs[exponent]

    def known_nonzero_indices(self):
        return [i for i, c in enumerate(self.coeffs) if c != 0]

    def valuation(self) -> int:
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        if self.truncation is None:
            raise IndexOutOfRange("valuation of the exactly zero series is undefined")
        raise IndexOutOfRange(
            f"series is zero to its truncation order {self.truncation}; valuation undetermined"
        )

    def _valuation_bound(self) -> int:
        """A certified lower bound on the valuation (the valuation itself when
        a nonzero coefficient is known; otherwise the truncation order)."""
        for i, c in enumerate(self.coeffs):
            if c != 0:
                return i
        return self.truncation if self.truncation is not None else 0

    def is_zero_to_truncation(self) -> bool:
        return not any(self.coeffs)

    # -- arithmetic --------------------------------------------------------

    @staticmethod
    def _min_trunc(a: int | None, b: int | None) -> int | None:
        if a is None:
            return b
        if b is None:
            return a
        return min(a, b)

    def __add__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        trunc = self._min_trunc(self.truncation, other.truncation)
        n = max(len(self.coeffs), len(other.coeffs))
        coeffs = [
            (self.coeffs[i] if i < len(self.coeffs) else Fraction(0))
            + (other.coeffs[i] if i < len(other.coeffs) else Fraction(0))
            for i in range(n)
        ]
        return TruncatedSeries.make(coeffs, trunc)

    def __sub__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        return self + other.scale(-1)

    def __neg__(self) -> "TruncatedSeries":
        return self.scale(-1)

    def scale(self, factor) -> "TruncatedSeries":
        factor = Fraction(factor)
        return TruncatedSeries.make(
            tuple(c * factor for c in self.coeffs), self.truncation
        )

    def __mul__(self, other: "TruncatedSeries") -> "TruncatedSeries":
        if self.truncation is None and other.truncation is None:
            trunc = None
        elif self.truncation is None:
            trunc = other.truncation + self._valuation_bound()
        elif other.truncation is None:
            trunc = self.truncation + other._valuation_bound()
        else:
            trunc = min(
                self.truncation + other._valuation_bound(),
                other.truncation + self._valuation_bound(),
            )
        width = len(self.coeffs) + len(other.coeffs) - 1 if self.coeffs and other.coeffs else 0
        if trunc is not None:
            width = min(width, trunc)
        out = [Fraction(0)] * max(width, 0)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                if b and i + j < len(out):
                    out[i + j] += a * b
        return TruncatedSeries.make(out, trunc)

    def truncate(self, order: int) -> "TruncatedSeries":
        if self.truncation is not None and order > self.truncation:
            raise IndexOutOfRange(
                f"cannot extend truncation order {self.truncation} to {order}"
            )
        return TruncatedSeries.make(self.coeffs[:order], order)

    def derivative(self) -> "TruncatedSeries":
        coeffs = tuple(
            Fraction(i) * self.coeffs[i] for i in range(1, len(self.coeffs))
        )
        trunc = None if self.truncation is None else max(self.truncation - 1, 0)
        return TruncatedSeries.make(coeffs, trunc)

    def shift_down(self, k: int) -> "TruncatedSeries":
        """Divide by z^k; the first k known coefficients must vanish."""
        if k < 0:
            raise IndexOutOfRange("shift amount must be nonnegative")
        head = self.coeffs[:k]
        if any(head):
            raise IndexOutOfRange(f"series is not divisible by z^{k}")
        if self.truncation is not None and self.truncation < k:
            raise IndexOutOfRange(
                f"divisibility by z^{k} is not visible at truncation order {self.truncation}"
            )
        trunc = None if self.truncation is None else self.truncation - k
        return TruncatedSeries.make(self.coeffs[k:], trunc)

    def shift_up(self, k: int) -> "TruncatedSeries":
        if k < 0:
            raise IndexOutOfRange("shift amount must be nonnegative")
        trunc = None if self.truncation is None else self.truncation + k
        return TruncatedSeries.make((Fraction(0),) * k + self.coeffs, trunc)

    def inverse(self, order: int) -> "TruncatedSeries":
        """Multiplicative inverse to the given truncation order.

        Requires a unit (nonzero constant term) and enough known
        coefficients.
        """
        if order < 1:
            raise IndexOutOfRange("inverse needs a positive truncation order")
        if self.truncation is not None and self.truncation < order:
            raise IndexOutOfRange(
                f"inverse to order {order} needs coefficients beyond truncation {self.truncation}"
            )
        a0 = self.coeffs[0] if self.coeffs else Fraction(0)
        if a0 == 0:
            raise IndexOutOfRange("inverse of a non-unit series")
        inv0 = 1 / a0
        out = [inv0]
        for n in range(1, order):
            acc = Fraction(0)
            for i in range(1, n + 1):
                ai = self.coeffs[i] if i < len(self.coeffs) else Fraction(0)
                if ai:
                    acc += ai * out[n - i]
            out.append(-acc * inv0)
        return TruncatedSeries.make(out, order)

    def compose_poly(self, p: Poly) -> "TruncatedSeries":
        """Evaluate the polynomial ``p`` at this series (Horner)."""
        acc = TruncatedSeries.make((), self.truncation)
        for c in reversed(p.coeffs):
            acc = acc * self
            acc = acc + TruncatedSeries.make((c,), acc.truncation)
        return acc

    def derivative_at_zero(self, order: int) -> Fraction:
        """Exact value of the order-th derivative at z = 0."""
        coeff = self.coefficient(order)
        fact = 1
        for i in range(2, order + 1):
            fact *= i
        return coeff * fact
