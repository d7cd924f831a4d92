"""Monomial invariants of diagonal torus actions.

A torus acts on coordinate ``c`` through the character with exponent vector
``weights[:, c]``, so a monomial is invariant exactly when the weight matrix
kills its exponent vector.  Invariant rings of diagonal actions are spanned by
invariant monomials, hence two points are separated by invariants of degree
<= D exactly when some invariant monomial of degree <= D takes different
values on them.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .fields import Cyclotomic, gf


@dataclass(frozen=True)
class WeightMatrix:
    """``entries`` is r x N; ``copies[i]`` lists the coordinates of vector variable i.

    All copies have the same length and coordinate ``copies[i][j]`` carries
    the same weight column for every i.
    """

    entries: tuple[tuple[int, ...], ...]
    copies: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n_coords = len(self.entries[0]) if self.entries else sum(map(len, self.copies))
        if any(len(row) != n_coords for row in self.entries):
            raise ValueError("ragged weight matrix")
        flat = sorted(c for cp in self.copies for c in cp)
        if flat != list(range(n_coords)):
            raise ValueError("copies must partition the coordinates")
        dim = len(self.copies[0])
        if any(len(cp) != dim for cp in self.copies):
            raise ValueError("all copies must have the same dimension")
        for cp in self.copies[1:]:
            for a, b in zip(self.copies[0], cp):
                if any(row[a] != row[b] for row in self.entries):
                    raise ValueError("copies must carry identical weights")

    @property
    def rank(self) -> int:
        return len(self.entries)

    @property
    def n_coords(self) -> int:
        return sum(map(len, self.copies))

    @property
    def dim(self) -> int:
        return len(self.copies[0])

    def column(self, c: int) -> tuple[int, ...]:
        return tuple(row[c] for row in self.entries)

    @classmethod
    def from_vector_weights(cls, columns: Sequence[Sequence[int]], n_copies: int) -> "WeightMatrix":
        """Weights given per coordinate of V (``columns[j]`` has length r), repeated over copies."""
        dim = len(columns)
        r = len(columns[0]) if columns else 0
        entries = tuple(
            tuple(columns[c % dim][row] for c in range(dim * n_copies)) for row in range(r)
        )
        copies = tuple(tuple(range(i * dim, (i + 1) * dim)) for i in range(n_copies))
        return cls(entries, copies)


def sharpness_weights(n: int, exponent: int = 2) -> WeightMatrix:
    """Rank n-1 torus on k^n: coordinate 1 has weight (1, ..., 1), coordinate
    j + 1 has weight -exponent * e_j; n + 1 copies of V."""
    if n < 2:
        raise ValueError("need n >= 2")
    cols = [[1] * (n - 1)] + [[-exponent * (i == j) for i in range(n - 1)] for j in range(n - 1)]
    return WeightMatrix.from_vector_weights(cols, n + 1)


@dataclass(frozen=True)
class Monomial:
    exponents: tuple[int, ...]

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def evaluate(self, point: "ExactPoint"):
        acc = point.coords[0] ** 0
        for c, e in zip(point.coords, self.exponents):
            if e:
                acc = acc * c**e
        return acc

    def support(self, w: WeightMatrix) -> list[int]:
        """Indices of vector variables the monomial involves."""
        return [i for i, cp in enumerate(w.copies) if any(self.exponents[c] for c in cp)]

    def multidegree(self, w: WeightMatrix) -> tuple[int, ...]:
        """Total degree in coordinate j summed over all copies, per j."""
        return tuple(sum(self.exponents[cp[j]] for cp in w.copies) for j in range(w.dim))

    def render(self, w: WeightMatrix) -> str:
        parts = []
        for i, cp in enumerate(w.copies):
            for j, c in enumerate(cp):
                e = self.exponents[c]
                if e:
                    parts.append(f"x({i + 1})_{j + 1}" + (f"^{e}" if e > 1 else ""))
        return "*".join(parts) or "1"


@dataclass(frozen=True)
class ExactPoint:
    """Coordinates of a point of V^m in one exact backend (Fraction, GFElement or Cyclotomic)."""

    coords: tuple

    @classmethod
    def from_vectors(cls, vectors: Iterable[Sequence]) -> "ExactPoint":
        return cls(tuple(c for v in vectors for c in v))


def _is_zero(c) -> bool:
    return c == c - c


def is_invariant(w: WeightMatrix, m: Monomial) -> bool:
    if len(m.exponents) != w.n_coords:
        raise ValueError("exponent vector has the wrong length")
    return all(sum(a * e for a, e in zip(row, m.exponents)) == 0 for row in w.entries)


def _allowed_coords(w: WeightMatrix, support, active) -> list[int]:
    copies = range(len(w.copies)) if support is None else sorted(set(support))
    coords = sorted(c for i in copies for c in w.copies[i])
    if active is not None:
        coords = [c for c in coords if c in active]
    return coords


def invariant_monomials(
    w: WeightMatrix,
    degree_cap: int,
    support: Iterable[int] | None = None,
    active: set[int] | None = None,
) -> Iterator[Monomial]:
    """Invariant monomials of degree <= ``degree_cap`` in graded order.

    Only coordinates of the vector variables in ``support`` (all when None)
    and, if given, in ``active`` may appear.  Degrees ascend; within a degree
    exponent vectors come in decreasing lexicographic order.  Branches are cut
    as soon as the remaining degree cannot cancel the partial weight.
    """
    coords = _allowed_coords(w, support, active)
    cols = [w.column(c) for c in coords]
    k, r = len(coords), w.rank
    # suffix extremes of each weight row over the still-free coordinates
    lo = [[0] * (k + 1) for _ in range(r)]
    hi = [[0] * (k + 1) for _ in range(r)]
    for row in range(r):
        lo[row][k], hi[row][k] = None, None
        for i in range(k - 1, -1, -1):
            v = cols[i][row]
            lo[row][i] = v if lo[row][i + 1] is None else min(v, lo[row][i + 1])
            hi[row][i] = v if hi[row][i + 1] is None else max(v, hi[row][i + 1])

    exps = [0] * k

    def feasible(i, partial, rem):
        for row in range(r):
            s = partial[row]
            if rem == 0 or i == k:
                if s or rem:
                    return False
            elif not rem * lo[row][i] <= -s <= rem * hi[row][i]:
                return False
        return not (i == k and rem)

    def fill(i, partial, rem):
        if not feasible(i, partial, rem):
            return
        if i == k or rem == 0:
            full = [0] * w.n_coords
            for c, e in zip(coords, exps):
                full[c] = e
            yield Monomial(tuple(full))
            return
        col = cols[i]
        for e in range(rem, -1, -1):
            exps[i] = e
            yield from fill(i + 1, [p + e * a for p, a in zip(partial, col)], rem - e)
        exps[i] = 0

    for t in range(degree_cap + 1):
        yield from fill(0, [0] * r, t)


def naive_invariant_monomials(w: WeightMatrix, degree_cap: int) -> set[Monomial]:
    """Every exponent vector of degree <= cap, filtered by the kernel test."""
    out = set()

    def rec(i, rem, exps):
        if i == w.n_coords:
            m = Monomial(tuple(exps))
            if is_invariant(w, m):
                out.add(m)
            return
        for e in range(rem + 1):
            rec(i + 1, rem - e, exps + [e])

    rec(0, degree_cap, [])
    return out


def separates(
    w: WeightMatrix,
    v: ExactPoint,
    v_prime: ExactPoint,
    degree_cap: int,
    support: Iterable[int] | None = None,
    skip_zero_coords: bool = True,
) -> Monomial | None:
    """First invariant monomial (graded order) with different values on v, v'.

    A monomial involving a coordinate that vanishes on both points is zero on
    both, so by default such coordinates are left out of the search; the
    answer is the same either way.
    """
    if len(v.coords) != w.n_coords or len(v_prime.coords) != w.n_coords:
        raise ValueError("points do not match the weight matrix")
    active = None
    if skip_zero_coords:
        active = {
            c for c in range(w.n_coords)
            if not (_is_zero(v.coords[c]) and _is_zero(v_prime.coords[c]))
        }
    for m in invariant_monomials(w, degree_cap, support, active):
        if m.evaluate(v) != m.evaluate(v_prime):
            return m
    return None


def displayed_monomial(n: int, exponent: int = 2) -> Monomial:
    """x(1)_1 x(2)_1^(exponent-1) x(3)_2 ... x(n+1)_n on the sharpness weights."""
    exps = [0] * (n * (n + 1))
    exps[0] = 1
    exps[n] = exponent - 1
    for k in range(2, n + 1):
        exps[k * n + (k - 1)] = 1
    return Monomial(tuple(exps))


def _unit_vectors(n, one, zero):
    return [[one if i == j else zero for i in range(n)] for j in range(n)]


def sharpness_points(n: int, first_scalar, one, zero):
    """(s e_1, e_1, e_2, ..., e_n) and (e_1, e_1, e_2, ..., e_n)."""
    e = _unit_vectors(n, one, zero)
    v = ExactPoint.from_vectors([[first_scalar * c for c in e[0]]] + e)
    vp = ExactPoint.from_vectors([e[0]] + e)
    return v, vp


def sharpness_check(
    n: int, degree_cap: int = 12, exponent: int = 2, backend: str = "rational",
    skip_zero_coords: bool = True,
) -> dict:
    """Separation with all n + 1 vector variables and with every n of them.

    ``exponent=2`` with ``backend="rational"`` is the characteristic-zero
    family with first vector -e_1; ``exponent=3`` pairs with a primitive cube
    root of unity, taken in GF(4) (``backend="gf4"``) or Q(zeta_3)
    (``backend="cyclotomic"``).
    """
    if backend == "rational":
        one, zero = Fraction(1), Fraction(0)
        scalar = -one if exponent == 2 else None
    elif backend == "gf4":
        F = gf(4)
        one, zero, scalar = F(1), F(0), F(2)
    elif backend == "cyclotomic":
        one, zero = Cyclotomic.of(3, [1]), Cyclotomic.of(3, [0])
        scalar = Cyclotomic.zeta(3)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    if scalar is None:
        raise ValueError("rational backend only supports exponent 2")
    w = sharpness_weights(n, exponent)
    v, vp = sharpness_points(n, scalar, one, zero)
    full = separates(w, v, vp, degree_cap, None, skip_zero_coords)
    restricted = {}
    for sub in combinations(range(n + 1), n):
        m = separates(w, v, vp, degree_cap, sub, skip_zero_coords)
        restricted[",".join(str(i + 1) for i in sub)] = None if m is None else m.render(w)
    return {
        "n": n,
        "exponent": exponent,
        "backend": backend,
        "degree_cap": degree_cap,
        "full_support": None if full is None else full.render(w),
        "n_subsets": restricted,
        "ok": full is not None and all(m is None for m in restricted.values()),
    }


def char2_variant(n: int, degree_cap: int = 12) -> dict:
    if not 3 <= n <= 5:
        raise ValueError("char2_variant expects 3 <= n <= 5")
    return sharpness_check(n, degree_cap, exponent=3, backend="gf4")


# -- span invariance ------------------------------------------------------------


def _torus_translate(w: WeightMatrix, p: ExactPoint, alphas: Sequence[Fraction]) -> ExactPoint:
    out = []
    for c, x in enumerate(p.coords):
        s = Fraction(1)
        for a, e in zip(alphas, w.column(c)):
            s *= a**e
        out.append(s * x)
    return ExactPoint(tuple(out))


def _recombine(w: WeightMatrix, p: ExactPoint, a: Sequence[Sequence[int]]) -> ExactPoint:
    """u_j = sum_i a[i][j] v_i over the vector variables of p."""
    vecs = [[p.coords[c] for c in cp] for cp in w.copies]
    m, dim = len(vecs), w.dim
    out = [[sum((a[i][j] * vecs[i][k] for i in range(m)), Fraction(0)) for k in range(dim)] for j in range(m)]
    return ExactPoint.from_vectors(out)


def _det(a):
    a = [[Fraction(x) for x in row] for row in a]
    n, det = len(a), Fraction(1)
    for i in range(n):
        piv = next((r for r in range(i, n) if a[r][i]), None)
        if piv is None:
            return Fraction(0)
        if piv != i:
            a[i], a[piv] = a[piv], a[i]
            det = -det
        det *= a[i][i]
        for r in range(i + 1, n):
            f = a[r][i] / a[i][i]
            a[r] = [x - f * y for x, y in zip(a[r], a[i])]
    return det


def span_data_respects_separation(
    w: WeightMatrix, trials: int, seed: int, degree_cap: int = 6
) -> dict:
    """Separability of (v, v') and (u, u') agrees when the spans of v_i + v'_i
    and u_j + u'_j coincide.

    u and u' are the same random invertible integer recombination of v and
    v'.  Half the trials take v' as a torus translate of v (never separable),
    a quarter take an independent v', a quarter permute the vector variables.
    """
    m, dim = len(w.copies), w.dim
    counts = {"separable": 0, "inseparable": 0}
    disagreements = []
    for k in range(trials):
        rng = random.Random(f"{seed}:{k}")

        def rand_point():
            return ExactPoint(tuple(Fraction(rng.randint(-3, 3)) for _ in range(m * dim)))

        v = rand_point()
        mode = rng.randrange(4)
        if mode < 2:
            alphas = [Fraction(rng.choice([-3, -2, -1, 2, 3]), rng.randint(1, 3)) for _ in range(w.rank)]
            vp = _torus_translate(w, v, alphas)
        else:
            vp = rand_point()
        if mode == 3:
            perm = list(range(m))
            rng.shuffle(perm)
            a = [[int(perm[i] == j) for j in range(m)] for i in range(m)]
        else:
            while True:
                a = [[rng.randint(-2, 2) for _ in range(m)] for _ in range(m)]
                if _det(a):
                    break
        u, up = _recombine(w, v, a), _recombine(w, vp, a)
        s1 = separates(w, v, vp, degree_cap) is not None
        s2 = separates(w, u, up, degree_cap) is not None
        counts["separable" if s1 else "inseparable"] += 1
        if s1 != s2:
            disagreements.append(k)
    return {
        "trials": trials,
        "seed": seed,
        "degree_cap": degree_cap,
        "verdicts": counts,
        "disagreements": disagreements,
        "ok": not disagreements,
    }
