"""Small exact fields: GF(q) for q <= 9 and cyclotomic extensions of Q."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product

SMALL_PRIME_POWERS = {2: (2, 1), 3: (3, 1), 4: (2, 2), 5: (5, 1), 7: (7, 1), 8: (2, 3), 9: (3, 2)}


def _poly_mulmod(a, b, modulus, p):
    """Multiply coefficient lists (low degree first) mod a monic ``modulus`` over GF(p)."""
    k = len(modulus) - 1
    out = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    for i in range(len(out) - 1, k - 1, -1):
        c = out[i]
        if c:
            for j in range(k + 1):
                out[i - k + j] = (out[i - k + j] - c * modulus[j]) % p
    return out[:k]


def _is_irreducible(modulus, p):
    k = len(modulus) - 1
    # degree <= 3: irreducible iff no root
    return all(
        sum(c * pow(r, i, p) for i, c in enumerate(modulus)) % p for r in range(p)
    ) if k <= 3 else False


class GF:
    """GF(q) with elements encoded as ints 0..q-1 (base-p digits, low first).

    Arithmetic goes through precomputed tables; ``GF(4)`` uses t^2 + t + 1,
    so its element 2 is a primitive cube root of unity.
    """

    def __init__(self, q: int):
        if q not in SMALL_PRIME_POWERS:
            raise ValueError(f"unsupported field size {q}; expected one of {sorted(SMALL_PRIME_POWERS)}")
        p, k = SMALL_PRIME_POWERS[q]
        self.q, self.p, self.k = q, p, k
        if k == 1:
            self.modulus = (0, 1)
        else:
            self.modulus = next(
                tuple(c) + (1,)
                for c in product(range(p), repeat=k)
                if _is_irreducible(tuple(c) + (1,), p)
            )
        digits = [self._digits(x) for x in range(q)]
        enc = {tuple(d): x for x, d in enumerate(digits)}
        self.add_table = tuple(
            tuple(enc[tuple((a + b) % p for a, b in zip(digits[x], digits[y]))] for y in range(q))
            for x in range(q)
        )
        self.mul_table = tuple(
            tuple(enc[tuple(_poly_mulmod(digits[x], digits[y], self.modulus, p))] for y in range(q))
            for x in range(q)
        )
        self.neg_table = tuple(self.add_table[x].index(0) for x in range(q))
        self.inv_table = tuple(
            self.mul_table[x].index(1) if x else None for x in range(q)
        )

    def _digits(self, x):
        out = []
        for _ in range(self.k):
            out.append(x % self.p)
            x //= self.p
        return out

    def add(self, a: int, b: int) -> int:
        return self.add_table[a][b]

    def mul(self, a: int, b: int) -> int:
        return self.mul_table[a][b]

    def __call__(self, x: int) -> "GFElement":
        return GFElement(self, x)

    def __repr__(self):
        return f"GF({self.q})"

    def __eq__(self, other):
        return isinstance(other, GF) and other.q == self.q

    def __hash__(self):
        return hash(("GF", self.q))


@lru_cache(maxsize=None)
def gf(q: int) -> GF:
    return GF(q)


@dataclass(frozen=True)
class GFElement:
    field: GF
    value: int

    def __add__(self, other):
        return GFElement(self.field, self.field.add(self.value, _val(self, other)))

    def __sub__(self, other):
        return self + GFElement(self.field, self.field.neg_table[_val(self, other)])

    def __neg__(self):
        return GFElement(self.field, self.field.neg_table[self.value])

    def __mul__(self, other):
        return GFElement(self.field, self.field.mul(self.value, _val(self, other)))

    def __pow__(self, e: int):
        acc = 1
        for _ in range(e):
            acc = self.field.mul(acc, self.value)
        return GFElement(self.field, acc)

    def __eq__(self, other):
        if not isinstance(other, GFElement):
            return NotImplemented
        return self.field == other.field and self.value == other.value

    def __hash__(self):
        return hash((self.field.q, self.value))

    def __repr__(self):
        return f"GF{self.field.q}({self.value})"


def _val(a: GFElement, b) -> int:
    if isinstance(b, GFElement):
        if b.field != a.field:
            raise ValueError("mixing elements of different fields")
        return b.value
    raise TypeError(f"cannot combine {a!r} with {b!r}")


# -- Q(zeta_m) -----------------------------------------------------------------


def _pdivmod(a, b):
    a = list(a)
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    while len(a) >= len(b) and any(a):
        c = a[-1] / b[-1]
        shift = len(a) - len(b)
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] -= c * y
        a.pop()
    return q, a


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[Fraction, ...]:
    """Phi_m as coefficients, low degree first."""
    num = [Fraction(-1)] + [Fraction(0)] * (m - 1) + [Fraction(1)]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _pdivmod(num, cyclotomic_polynomial(d))
            assert not any(rem)
    while num and num[-1] == 0:
        num.pop()
    return tuple(num)


@dataclass(frozen=True)
class Cyclotomic:
    """Element of Q(zeta_m) as a residue modulo Phi_m, coefficients low first."""

    m: int
    coeffs: tuple[Fraction, ...]

    @classmethod
    def of(cls, m: int, coeffs) -> "Cyclotomic":
        phi = cyclotomic_polynomial(m)
        _, rem = _pdivmod([Fraction(c) for c in coeffs] or [Fraction(0)], phi)
        rem = list(rem) + [Fraction(0)] * (len(phi) - 1 - len(rem))
        return cls(m, tuple(rem[: len(phi) - 1]))

    @classmethod
    def zeta(cls, m: int) -> "Cyclotomic":
        return cls.of(m, [0, 1])

    def _lift(self, other):
        if isinstance(other, Cyclotomic):
            if other.m != self.m:
                raise ValueError("different cyclotomic fields")
            return other
        return Cyclotomic.of(self.m, [other])

    def __add__(self, other):
        o = self._lift(other)
        return Cyclotomic(self.m, tuple(a + b for a, b in zip(self.coeffs, o.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.m, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __mul__(self, other):
        o = self._lift(other)
        out = [Fraction(0)] * (2 * len(self.coeffs))
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(o.coeffs):
                    out[i + j] += a * b
        return Cyclotomic.of(self.m, out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        acc = Cyclotomic.of(self.m, [1])
        for _ in range(e):
            acc = acc * self
        return acc

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclotomic.of(self.m, [other])
        if not isinstance(other, Cyclotomic):
            return NotImplemented
        return self.m == other.m and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.m, self.coeffs))

    def __repr__(self):
        return f"Q(zeta_{self.m}){[str(c) for c in self.coeffs]}"
