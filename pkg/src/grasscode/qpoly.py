"""Exact polynomials in q with rational coefficients, and the C(3,7) tables.

The orbit-size table ``ni_table`` and the weight table ``wt_table`` are
transcribed as polynomials; the identities checked here (orbit sizes sum to
|P^34|, and the first MacWilliams moment) are the guard against transcription
errors.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .errors import InexactDivision


class QPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        c = [Fraction(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(c)

    @classmethod
    def const(cls, c) -> "QPoly":
        return cls([c])

    @classmethod
    def monomial(cls, d: int, c=1) -> "QPoly":
        return cls([0] * d + [c])

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    @staticmethod
    def _lift(x) -> "QPoly":
        return x if isinstance(x, QPoly) else QPoly.const(x)

    def __add__(self, other) -> "QPoly":
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return QPoly(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "QPoly":
        return QPoly(-x for x in self.coeffs)

    def __sub__(self, other) -> "QPoly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "QPoly":
        return self._lift(other) - self

    def __mul__(self, other) -> "QPoly":
        other = self._lift(other)
        if self.is_zero() or other.is_zero():
            return QPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, x in enumerate(self.coeffs):
            if x:
                for j, y in enumerate(other.coeffs):
                    out[i + j] += x * y
        return QPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "QPoly":
        out = QPoly.const(1)
        for _ in range(n):
            out = out * self
        return out

    def divmod(self, other: "QPoly") -> tuple["QPoly", "QPoly"]:
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = list(self.coeffs)
        quot = [Fraction(0)] * max(len(rem) - len(other.coeffs) + 1, 0)
        lead = other.coeffs[-1]
        dd = other.degree
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i] / lead
            if c:
                quot[i - dd] = c
                for j, y in enumerate(other.coeffs):
                    rem[i - dd + j] -= c * y
        return QPoly(quot), QPoly(rem)

    def exact_div(self, other) -> "QPoly":
        other = self._lift(other)
        quot, rem = self.divmod(other)
        if not rem.is_zero():
            raise InexactDivision(f"remainder {rem} dividing {self} by {other}")
        return quot

    __floordiv__ = exact_div

    def __truediv__(self, other) -> "QPoly":
        if isinstance(other, QPoly) and other.degree > 0:
            return self.exact_div(other)
        c = other.coeffs[0] if isinstance(other, QPoly) else Fraction(other)
        return QPoly(x / c for x in self.coeffs)

    def __call__(self, q) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * q + c
        return acc

    def at_int(self, q: int) -> int:
        """Evaluate at an integer; the value must be an integer."""
        v = self(q)
        if v.denominator != 1:
            raise InexactDivision(f"{self} at q={q} is {v}, not an integer")
        return v.numerator

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly.const(other)
        return isinstance(other, QPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for d in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[d]
            if not c:
                continue
            mono = "" if d == 0 else ("q" if d == 1 else f"q^{d}")
            if mono and c == 1:
                terms.append(mono)
            elif mono and c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}{'*' + mono if mono else ''}")
        return " + ".join(terms).replace("+ -", "- ")


Q = QPoly([0, 1])


def qm1(d: int) -> QPoly:
    """q^d - 1."""
    return Q**d - 1


def projective(d: int) -> QPoly:
    """|P^d| = (q^(d+1) - 1)/(q - 1)."""
    return qm1(d + 1).exact_div(qm1(1))


def gaussian_binomial(m: int, l: int) -> QPoly:
    if not 0 <= l <= m:
        raise ValueError(f"need 0 <= l <= m, got m={m}, l={l}")
    num = QPoly.const(1)
    den = QPoly.const(1)
    for i in range(l):
        num = num * qm1(m - i)
        den = den * qm1(i + 1)
    return num.exact_div(den)


def glq_order(m: int) -> QPoly:
    """|GL(m, q)| = q^(m(m-1)/2) (q^m - 1) ... (q - 1)."""
    out = Q ** (m * (m - 1) // 2)
    for i in range(1, m + 1):
        out = out * qm1(i)
    return out


HALF = Fraction(1, 2)


def ni_table() -> list[QPoly]:
    """Sizes N_1..N_11 of the eleven projective classes of 3-forms on F^7."""
    q = Q
    return [
        (qm1(7) * qm1(5) * (q**2 - q + 1)).exact_div(qm1(1) ** 2),
        (q**2 * qm1(7) * qm1(5) * (q**4 + q**2 + 1) * qm1(3)).exact_div(qm1(1) ** 2),
        (HALF * q**9 * qm1(7) * qm1(5) * (q**3 + 1) * (q**2 + 1)).exact_div(qm1(1)),
        (q**4 * qm1(7) * qm1(6) * qm1(5) * qm1(4)).exact_div(qm1(1) ** 2),
        HALF * q**9 * qm1(7) * qm1(5) * qm1(3) * (q + 1),
        (HALF * q**9 * qm1(7) * qm1(6) * qm1(5) * qm1(3) * (q**2 + 1)).exact_div(qm1(1) ** 2),
        q**6 * qm1(7) * qm1(5) * (q**2 + q + 1),
        q**11 * qm1(7) * qm1(6) * qm1(5) * (q**2 + q + 1) * (q**2 + 1),
        (q**6 * qm1(7) * qm1(6) * qm1(5) * qm1(4)).exact_div(qm1(1)),
        q**15 * qm1(7) * qm1(5) * qm1(4) * qm1(3),
        HALF * q**9 * qm1(7) * qm1(6) * qm1(5) * qm1(3),
    ]


def wt_table() -> list[QPoly]:
    """Weights of the eleven class representatives as codewords of C(3,7)."""
    q = Q
    base = q**12 + q**10
    return [
        q**12,
        base,
        base + q**9 - q**7,
        base + q**9,
        base + q**9 + q**7,
        base + q**9 + q**8 - q**7,
        base + q**8,
        base + q**9 + q**8,
        base + q**9 + q**8,
        base + q**9 + q**8 + q**6,
        base + q**9 + q**8 + q**7,
    ]


def sum_ni() -> QPoly:
    out = QPoly()
    for n in ni_table():
        out = out + n
    return out


def weighted_sum() -> QPoly:
    out = QPoly()
    for n, w in zip(ni_table(), wt_table()):
        out = out + n * w
    return out


def verify_sum_ni() -> bool:
    return sum_ni() == projective(34)


def verify_macwilliams() -> bool:
    return weighted_sum() == Q**34 * gaussian_binomial(7, 3)


def verify_average_weight() -> bool:
    """Mean class weight equals |G(3,7)| (1 - |P^33|/|P^34|), cleared of denominators."""
    p34, p33 = projective(34), projective(33)
    return weighted_sum() * p34 == gaussian_binomial(7, 3) * (p34 - p33) * sum_ni()


IDENTITIES = {
    "sum_ni": verify_sum_ni,
    "macwilliams": verify_macwilliams,
    "average_weight": verify_average_weight,
}
