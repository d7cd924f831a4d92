"""Finite groups as immutable multiplication tables.

Every constructor closes a fixed generator list under right multiplication,
breadth first, starting from the identity.  Element indices are the order of
discovery, so tables are identical across runs.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Sequence

MAX_ORDER = 200


@dataclass(frozen=True)
class GroupTable:
    """A finite group given by its full multiplication table.

    ``product[x][y]`` is the index of ``x * y``.  ``provenance`` records how
    the group was built, e.g. ``("cyclic", 6)`` or ``("binary", "tetrahedral")``.
    """

    product: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    provenance: tuple = ("custom",)
    identity: int = 0
    inverse: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        n = len(self.product)
        if n == 0:
            raise ValueError("a group has at least one element")
        if len(self.labels) != n or any(len(row) != n for row in self.product):
            raise ValueError("product table and labels must be n x n and n")
        inv = [-1] * n
        for x in range(n):
            row = self.product[x]
            for y in range(n):
                if row[y] == self.identity:
                    inv[x] = y
                    break
        if -1 in inv:
            raise ValueError("some element has no inverse")
        object.__setattr__(self, "inverse", tuple(inv))

    @property
    def order(self) -> int:
        return len(self.product)

    @property
    def name(self) -> str:
        kind, *params = self.provenance
        return kind if not params else f"{kind}:{':'.join(map(str, params))}"

    def mul(self, x: int, y: int) -> int:
        return self.product[x][y]

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inverse[x], -k
        acc = self.identity
        for _ in range(k):
            acc = self.product[acc][x]
        return acc

    def content_hash(self) -> str:
        h = hashlib.sha256()
        h.update(self.order.to_bytes(4, "big"))
        for row in self.product:
            h.update(bytes(row))  # indices < MAX_ORDER < 256
        return h.hexdigest()

    def check_axioms(self) -> None:
        """Exhaustive associativity, unit, inverse and Latin-square checks."""
        n, p, e = self.order, self.product, self.identity
        full = set(range(n))
        for x in range(n):
            if set(p[x]) != full or {p[y][x] for y in range(n)} != full:
                raise AssertionError(f"row/column {x} is not a permutation")
            if p[e][x] != x or p[x][e] != x:
                raise AssertionError(f"identity fails on {x}")
            i = self.inverse[x]
            if p[x][i] != e or p[i][x] != e:
                raise AssertionError(f"inverse fails on {x}")
        for x in range(n):
            px = p[x]
            for y in range(n):
                pxy = p[px[y]]
                py = p[y]
                for z in range(n):
                    if pxy[z] != px[py[z]]:
                        raise AssertionError(f"not associative at {(x, y, z)}")


def element_order(g: GroupTable, x: int) -> int:
    """Least k >= 1 with x^k equal to the identity."""
    k, acc = 1, x
    while acc != g.identity:
        acc = g.product[acc][x]
        k += 1
    return k


def center(g: GroupTable) -> list[int]:
    p = g.product
    return [x for x in range(g.order) if all(p[x][y] == p[y][x] for y in range(g.order))]


def generated_subgroup(g: GroupTable, gens: Sequence[int]) -> int:
    """Bitset of the subgroup generated by ``gens``."""
    p = g.product
    seen = 1 << g.identity
    frontier = [g.identity]
    while frontier:
        nxt = []
        for x in frontier:
            row = p[x]
            for s in gens:
                y = row[s]
                if not seen >> y & 1:
                    seen |= 1 << y
                    nxt.append(y)
        frontier = nxt
    return seen


def commutator_subgroup(g: GroupTable) -> int:
    p, inv = g.product, g.inverse
    comms = {p[p[inv[x]][inv[y]]][p[x][y]] for x in range(g.order) for y in range(g.order)}
    return generated_subgroup(g, sorted(comms))


def abelianization_order(g: GroupTable) -> int:
    return g.order // bin(commutator_subgroup(g)).count("1")


def close_under_products(
    gens: Sequence[Hashable],
    mul: Callable[[Hashable, Hashable], Hashable],
    identity: Hashable,
    label: Callable[[Hashable], str] = str,
    provenance: tuple = ("custom",),
    cap: int = MAX_ORDER,
) -> GroupTable:
    """Close ``gens`` under right multiplication and tabulate the result.

    Only ``order * len(gens)`` products are evaluated with ``mul``; the rest of
    the table follows from the breadth-first word of each element.
    """
    elements = [identity]
    index = {identity: 0}
    parent = [(-1, -1)]
    right = []  # right[x][s] = index of x * gens[s]
    i = 0
    while i < len(elements):
        x = elements[i]
        row = []
        for k, s in enumerate(gens):
            y = mul(x, s)
            if y not in index:
                if len(elements) >= cap:
                    raise RuntimeError(
                        f"closure exceeded {cap} elements; generators are wrong"
                    )
                index[y] = len(elements)
                elements.append(y)
                parent.append((i, k))
            row.append(index[y])
        right.append(row)
        i += 1
    n = len(elements)
    product = []
    for x in range(n):
        row = [x] * n
        for y in range(1, n):
            py, k = parent[y]
            row[y] = right[row[py]][k]
        product.append(tuple(row))
    return GroupTable(tuple(product), tuple(label(x) for x in elements), provenance)


# -- cyclic and dicyclic ------------------------------------------------------


def build_cyclic(n: int) -> GroupTable:
    if n < 1:
        raise ValueError("cyclic group order must be >= 1")
    if n > MAX_ORDER:
        raise ValueError(f"order {n} exceeds {MAX_ORDER}")
    gens = [1] if n > 1 else []
    return close_under_products(
        gens, lambda x, y: (x + y) % n, 0, lambda x: f"g^{x}", ("cyclic", n)
    )


def build_dicyclic(n: int) -> GroupTable:
    """Dicyclic group of order 4n: b^4 = 1, a^n = b^2, b a b^-1 = a^-1.

    Elements are normal forms a^i b^j with 0 <= i < 2n, j in {0, 1}.
    """
    if n < 2:
        raise ValueError("dicyclic group needs n >= 2")
    if 4 * n > MAX_ORDER:
        raise ValueError(f"order {4 * n} exceeds {MAX_ORDER}")
    m = 2 * n

    def mul(x, y):
        (i, j), (k, l) = x, y
        k = k if j == 0 else -k
        if j + l == 2:
            return ((i + k + n) % m, 0)
        return ((i + k) % m, j + l)

    def label(x):
        i, j = x
        return {(0, 0): "1", (0, 1): "b"}.get(x) or f"a^{i}" + ("b" if j else "")

    return close_under_products([(1, 0), (0, 1)], mul, (0, 0), label, ("dicyclic", n))


# -- permutation fixtures ----------------------------------------------------


def _cycles_to_perm(cycles, degree):
    p = list(range(degree))
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            p[a] = b
    return tuple(p)


def _perm_label(p):
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [i], p[i]
        while j != i:
            seen.add(j)
            cyc.append(j)
            j = p[j]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def build_permutation_group(gens, degree: int, provenance: tuple = ("custom",)) -> GroupTable:
    """Group generated by permutations given as cycle lists, e.g. ``[[(0, 1, 2)]]``.

    Composition is ``(p * q)(i) = p(q(i))``.
    """
    perms = [_cycles_to_perm(c, degree) for c in gens]
    ident = tuple(range(degree))
    return close_under_products(
        perms, lambda p, q: tuple(p[i] for i in q), ident, _perm_label, provenance
    )


def build_klein4() -> GroupTable:
    return build_permutation_group([[(0, 1), (2, 3)], [(0, 2), (1, 3)]], 4, ("klein4",))


def build_alternating(n: int) -> GroupTable:
    if n == 4:
        gens = [[(0, 1, 2)], [(0, 1), (2, 3)]]
    elif n == 5:
        gens = [[(0, 1, 2, 3, 4)], [(0, 1, 2)]]
    else:
        raise ValueError("only A4 and A5 are provided")
    return build_permutation_group(gens, n, ("alternating", n))


def build_symmetric(n: int) -> GroupTable:
    if not 1 <= n <= 5:
        raise ValueError("symmetric groups up to degree 5 only")
    gens = [[tuple(range(n))], [(0, 1)]] if n > 1 else []
    return build_permutation_group(gens, n, ("symmetric", n))


# -- exact quaternions over Q(sqrt2, sqrt5) ---------------------------------


@dataclass(frozen=True)
class QuadraticFieldScalar:
    """a + b*sqrt(2) + c*sqrt(5) + d*sqrt(10) with rational coordinates."""

    coords: tuple[Fraction, Fraction, Fraction, Fraction]

    # sqrt(m_i) * sqrt(m_j) = k * sqrt(m_l): (i, j) -> (l, k)
    _MUL = {
        (0, 0): (0, 1), (0, 1): (1, 1), (0, 2): (2, 1), (0, 3): (3, 1),
        (1, 1): (0, 2), (1, 2): (3, 1), (1, 3): (2, 2),
        (2, 2): (0, 5), (2, 3): (1, 5),
        (3, 3): (0, 10),
    }

    @classmethod
    def of(cls, a=0, b=0, c=0, d=0) -> "QuadraticFieldScalar":
        return cls((Fraction(a), Fraction(b), Fraction(c), Fraction(d)))

    def __add__(self, other):
        return QuadraticFieldScalar(tuple(x + y for x, y in zip(self.coords, other.coords)))

    def __neg__(self):
        return QuadraticFieldScalar(tuple(-x for x in self.coords))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        out = [Fraction(0)] * 4
        for i, x in enumerate(self.coords):
            if not x:
                continue
            for j, y in enumerate(other.coords):
                if y:
                    l, k = self._MUL[(min(i, j), max(i, j))]
                    out[l] += k * x * y
        return QuadraticFieldScalar(tuple(out))

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        names = ("", "√2", "√5", "√10")
        terms = [f"{x}{n}" for x, n in zip(self.coords, names) if x]
        return "+".join(terms) or "0"


_ZERO = QuadraticFieldScalar.of()
_ONE = QuadraticFieldScalar.of(1)


@dataclass(frozen=True)
class Quaternion:
    w: QuadraticFieldScalar
    x: QuadraticFieldScalar
    y: QuadraticFieldScalar
    z: QuadraticFieldScalar

    def __mul__(self, o: "Quaternion") -> "Quaternion":
        a1, b1, c1, d1 = self.w, self.x, self.y, self.z
        a2, b2, c2, d2 = o.w, o.x, o.y, o.z
        return Quaternion(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )

    def norm(self) -> QuadraticFieldScalar:
        return self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z

    def __str__(self):
        parts = []
        for comp, unit in zip((self.w, self.x, self.y, self.z), ("", "i", "j", "k")):
            if not comp.is_zero():
                parts.append(f"({comp}){unit}" if unit else f"({comp})")
        return "+".join(parts) or "0"


def _q(w=_ZERO, x=_ZERO, y=_ZERO, z=_ZERO):
    return Quaternion(w, x, y, z)


def _s(a=0, b=0, c=0, d=0):
    return QuadraticFieldScalar.of(a, b, c, d)


_HALF = Fraction(1, 2)
_GOLDEN = _s(_HALF, 0, _HALF)  # (1 + sqrt5) / 2
_GOLDEN_INV = _s(-_HALF, 0, _HALF)  # (sqrt5 - 1) / 2

_BINARY_GENERATORS = {
    # i and (1 + i + j + k)/2: the 24 Hurwitz units
    "tetrahedral": [_q(x=_ONE), _q(_s(_HALF), _s(_HALF), _s(_HALF), _s(_HALF))],
    # (1 + i)/sqrt2 and (1 + i + j + k)/2
    "octahedral": [
        _q(_s(0, _HALF), _s(0, _HALF)),
        _q(_s(_HALF), _s(_HALF), _s(_HALF), _s(_HALF)),
    ],
    # i, (1 + i + j + k)/2 and (phi + phi^-1 i + j)/2
    "icosahedral": [
        _q(x=_ONE),
        _q(_s(_HALF), _s(_HALF), _s(_HALF), _s(_HALF)),
        _q(_GOLDEN * _s(_HALF), _GOLDEN_INV * _s(_HALF), _s(_HALF)),
    ],
}

BINARY_ORDERS = {"tetrahedral": 24, "octahedral": 48, "icosahedral": 120}
BINARY_ALIASES = {"tet": "tetrahedral", "oct": "octahedral", "ico": "icosahedral"}


def build_binary_polyhedral(tag: str) -> GroupTable:
    tag = BINARY_ALIASES.get(tag, tag)
    if tag not in _BINARY_GENERATORS:
        raise ValueError(f"unknown binary polyhedral group {tag!r}")
    gens = _BINARY_GENERATORS[tag]
    for q in gens:
        if q.norm() != _ONE:
            raise AssertionError(f"generator {q} is not a unit quaternion")
    g = close_under_products(gens, Quaternion.__mul__, _q(_ONE), str, ("binary", tag))
    if g.order != BINARY_ORDERS[tag]:
        raise RuntimeError(f"{tag}: closure has order {g.order}, expected {BINARY_ORDERS[tag]}")
    return g


def parse_group(spec: str) -> GroupTable:
    """Build a group from a ``kind:params`` string such as ``cyclic:6`` or ``binary:ico``."""
    kind, _, arg = spec.partition(":")
    try:
        if kind == "cyclic":
            return build_cyclic(int(arg))
        if kind == "dicyclic":
            return build_dicyclic(int(arg))
        if kind == "binary":
            return build_binary_polyhedral(arg)
        if kind == "klein4" and not arg:
            return build_klein4()
        if kind == "alternating":
            return build_alternating(int(arg))
        if kind == "symmetric":
            return build_symmetric(int(arg))
    except ValueError as exc:
        raise ValueError(f"bad group spec {spec!r}: {exc}") from None
    raise ValueError(f"bad group spec {spec!r}")
