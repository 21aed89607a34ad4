"""Exact arithmetic in small finite fields GF(p^k).

Elements are encoded as integers in ``[0, q)``: the element
``c_0 + c_1 x + ... + c_{k-1} x^{k-1}`` of ``GF(p)[x]/(modulus)`` has index
``c_0 + c_1 p + ... + c_{k-1} p^{k-1}``.  Index 0 is zero and index 1 is one.

Most of the package works directly on these integer indices (scalar ops via
:class:`FieldSpec` methods, array ops via the ``v*`` methods); the
:class:`FieldElement` wrapper is there for readable scalar code and tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import product

import numpy as np

from .errors import DivisionByZero, NotPrimePower, Unsupported

MAX_Q = 49

# Conway polynomials, coefficients from the constant term up (monic).
MODULI: dict[int, tuple[int, ...]] = {
    4: (1, 1, 1),
    8: (1, 1, 0, 1),
    16: (1, 1, 0, 0, 1),
    32: (1, 0, 1, 0, 0, 1),
    9: (2, 2, 1),
    27: (1, 2, 0, 1),
    25: (2, 4, 1),
    49: (3, 6, 1),
}


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n**0.5) + 1))


def prime_power(q: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``q = p**k`` or None if q is not a prime power."""
    if q < 2:
        return None
    for p in range(2, q + 1):
        if q % p == 0:
            if not _is_prime(p):
                return None
            k, r = 0, q
            while r % p == 0:
                r //= p
                k += 1
            return (p, k) if r == 1 else None
    return None


@dataclass(frozen=True, eq=False)
class FieldSpec:
    q: int
    p: int
    k: int
    modulus: tuple[int, ...] = field(default=())

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self.q == other.q

    def __hash__(self):
        return hash(("FieldSpec", self.q))

    def __repr__(self):
        return f"GF({self.q})"

    @property
    def is_prime(self) -> bool:
        return self.k == 1

    def to_dict(self) -> dict:
        return {"q": self.q, "p": self.p, "k": self.k, "modulus": list(self.modulus)}

    # -- table construction -------------------------------------------------

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.k):
            out.append(a % self.p)
            a //= self.p
        return out

    def _index(self, digits) -> int:
        return sum(c * self.p**i for i, c in enumerate(digits))

    def _polymul(self, a: int, b: int) -> int:
        p, k = self.p, self.k
        da, db = self._digits(a), self._digits(b)
        prod = [0] * (2 * k - 1)
        for i, x in enumerate(da):
            if x:
                for j, y in enumerate(db):
                    prod[i + j] = (prod[i + j] + x * y) % p
        # reduce by the monic modulus from the top degree down
        for d in range(2 * k - 2, k - 1, -1):
            c = prod[d]
            if c:
                for i, m in enumerate(self.modulus):
                    prod[d - k + i] = (prod[d - k + i] - c * m) % p
        return self._index(prod[:k])

    @cached_property
    def add_table(self) -> np.ndarray:
        q, p = self.q, self.p
        t = np.zeros((q, q), dtype=np.uint8)
        digits = [self._digits(a) for a in range(q)]
        for a in range(q):
            for b in range(q):
                t[a, b] = self._index([(x + y) % p for x, y in zip(digits[a], digits[b])])
        return t

    @cached_property
    def mul_table(self) -> np.ndarray:
        q = self.q
        t = np.zeros((q, q), dtype=np.uint8)
        for a in range(q):
            for b in range(a, q):
                t[a, b] = t[b, a] = self._polymul(a, b)
        return t

    @cached_property
    def neg_table(self) -> np.ndarray:
        return np.array([int(np.nonzero(self.add_table[a] == 0)[0][0]) for a in range(self.q)],
                        dtype=np.uint8)

    @cached_property
    def inv_table(self) -> np.ndarray:
        t = np.zeros(self.q, dtype=np.uint8)
        for a in range(1, self.q):
            t[a] = int(np.nonzero(self.mul_table[a] == 1)[0][0])
        return t

    @cached_property
    def sub_table(self) -> np.ndarray:
        return self.add_table[:, self.neg_table]

    @cached_property
    def _lists(self):
        return (self.add_table.tolist(), self.mul_table.tolist(),
                self.neg_table.tolist(), self.inv_table.tolist(), self.sub_table.tolist())

    # -- scalar ops on indices ----------------------------------------------

    def add(self, a: int, b: int) -> int:
        return self._lists[0][a][b]

    def sub(self, a: int, b: int) -> int:
        return self._lists[4][a][b]

    def mul(self, a: int, b: int) -> int:
        return self._lists[1][a][b]

    def neg(self, a: int) -> int:
        return self._lists[2][a]

    def inv(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        return self._lists[3][a]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self.inv(a), -n
        r = 1
        while n:
            if n & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            n >>= 1
        return r

    def from_int(self, n: int) -> int:
        """Image of the integer n under Z -> GF(q)."""
        return n % self.p

    def elements(self) -> range:
        return range(self.q)

    def element(self, idx: int) -> "FieldElement":
        return FieldElement(self, idx)

    # -- vectorized ops on uint8 arrays ---------------------------------------

    def vadd(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.k == 1:
            return ((a.astype(np.int16) + b) % self.p).astype(np.uint8)
        return self.add_table[a, b]

    def vsub(self, a, b):
        if self.p == 2:
            return np.bitwise_xor(a, b)
        if self.k == 1:
            return ((a.astype(np.int16) - b) % self.p).astype(np.uint8)
        return self.sub_table[a, b]

    def vmul(self, a, b):
        if self.q == 2:
            return np.bitwise_and(a, b)
        if self.k == 1:
            return ((a.astype(np.int32) * b) % self.p).astype(np.uint8)
        return self.mul_table[a, b]

    def vneg(self, a):
        if self.p == 2:
            return np.asarray(a)
        return self.neg_table[a]

    def vinv(self, a):
        return self.inv_table[a]


@dataclass(frozen=True)
class FieldElement:
    field: FieldSpec
    idx: int

    def _coerce(self, other) -> int:
        if isinstance(other, FieldElement):
            if other.field != self.field:
                raise ValueError("elements of different fields")
            return other.idx
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.add(self.idx, b))

    __radd__ = __add__

    def __sub__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.sub(self.idx, b))

    def __rsub__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.sub(b, self.idx))

    def __mul__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.mul(self.idx, b))

    __rmul__ = __mul__

    def __neg__(self):
        return FieldElement(self.field, self.field.neg(self.idx))

    def __truediv__(self, other):
        b = self._coerce(other)
        return FieldElement(self.field, self.field.div(self.idx, b))

    def __pow__(self, n: int):
        return FieldElement(self.field, self.field.pow(self.idx, n))

    def inv(self) -> "FieldElement":
        return FieldElement(self.field, self.field.inv(self.idx))

    def __bool__(self):
        return self.idx != 0

    def __int__(self):
        return self.idx

    def __repr__(self):
        return f"{self.idx}@GF({self.field.q})"


@lru_cache(maxsize=None)
def field_new(q: int) -> FieldSpec:
    """Return the field with q elements (2 <= q <= 49) and its fixed modulus."""
    pk = prime_power(q)
    if pk is None:
        raise NotPrimePower(f"{q} is not a prime power")
    if q > MAX_Q:
        raise Unsupported(f"q={q} exceeds the supported bound {MAX_Q}")
    p, k = pk
    return FieldSpec(q=q, p=p, k=k, modulus=MODULI.get(q, ()))


def is_square(spec: FieldSpec, a: int) -> bool:
    return any(spec.mul(b, b) == a for b in spec.elements())


def special_s(spec: FieldSpec) -> int:
    """Least-index scalar that is a non-square (odd p) or not of the form a^2 + a (p = 2)."""
    if spec.p == 2:
        image = {spec.add(spec.mul(a, a), a) for a in spec.elements()}
    else:
        image = {spec.mul(b, b) for b in spec.elements()}
    return min(set(spec.elements()) - image)


def is_irreducible(p: int, coeffs) -> bool:
    """Exhaustive irreducibility test for a monic polynomial over GF(p).

    Checks that no monic polynomial of degree 1..deg/2 divides it.
    """
    coeffs = list(coeffs)
    deg = len(coeffs) - 1
    if deg <= 0:
        return False

    def rem(num, den):
        num = list(num)
        dd = len(den) - 1
        inv_lead = pow(den[-1], p - 2, p)
        for i in range(len(num) - 1, dd - 1, -1):
            c = num[i] * inv_lead % p
            if c:
                for j, d in enumerate(den):
                    num[i - dd + j] = (num[i - dd + j] - c * d) % p
        return num[:dd]

    for d in range(1, deg // 2 + 1):
        for low in product(range(p), repeat=d):
            if not any(rem(coeffs, list(low) + [1])):
                return False
    return True
