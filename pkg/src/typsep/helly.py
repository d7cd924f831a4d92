"""Helly dimension of finite groups.

The Helly dimension of G is the least n such that any family of left cosets
whose n-fold subfamilies all meet has a common element.  Equivalently, it is
the largest size of an inclusion-minimal family of left cosets with empty
intersection:

* if n is at least that size and every n-subfamily of a family meets, an
  empty family would contain a minimal empty subfamily of size <= n, which
  sits inside some n-subfamily;
* a minimal empty family of size s has all (s-1)-subfamilies meeting, so the
  property fails for n = s - 1.

``kappa_exact`` searches for minimal empty families directly.  In such a
family of size s >= 3 every (s-1) of the subgroups are intersection
independent (otherwise one coset would contain the intersection of the
others), so s <= mu(G) + 1 and the search only visits those subgroup
families.  ``kappa_oracle`` instead applies the definition to every family of
distinct cosets up to a size cap, and is kept independent of that argument.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from .groups import BINARY_ALIASES, GroupTable
from .lattice import (
    SubgroupLattice,
    bits_to_list,
    chain_length,
    enumerate_subgroups,
    independent_families,
    is_intersection_independent,
    mu,
    popcount,
)


@dataclass(frozen=True)
class Coset:
    """Left coset ``representative * subgroup``.

    ``subgroup`` and ``members`` are element bitsets; ``representative`` is
    the smallest element index in the coset.
    """

    subgroup: int
    representative: int
    members: int

    @property
    def size(self) -> int:
        return popcount(self.members)


def left_coset(g: GroupTable, subgroup: int, x: int) -> Coset:
    row = g.product[x]
    members = 0
    for h in bits_to_list(subgroup):
        members |= 1 << row[h]
    return Coset(subgroup, (members & -members).bit_length() - 1, members)


def translate(g: GroupTable, c: Coset, x: int) -> Coset:
    """The coset ``x * c``."""
    return left_coset(g, c.subgroup, g.product[x][c.representative])


def coset_intersection(family: Sequence[Coset], lattice: SubgroupLattice | None = None):
    """Intersection of left cosets, or ``None`` when it is empty.

    A non-empty intersection is a left coset of the intersection of the
    subgroups.  With a lattice the resulting subgroup is checked to be one of
    its members.
    """
    if not family:
        raise ValueError("empty family of cosets")
    members, sub = -1, -1
    for c in family:
        members &= c.members
        sub &= c.subgroup
    if not members:
        return None
    if lattice is not None:
        lattice.id_of(sub)
    return Coset(sub, (members & -members).bit_length() - 1, members)


@dataclass(frozen=True)
class HellyWitness:
    """An inclusion-minimal family of left cosets with empty intersection."""

    cosets: tuple[Coset, ...]
    kind: str = "minimal-empty-family"

    def __len__(self) -> int:
        return len(self.cosets)

    def is_valid(self) -> bool:
        cs = self.cosets
        if len(cs) < 2 or coset_intersection(cs) is not None:
            return False
        # every proper subfamily lies inside one of size len - 1
        return all(
            coset_intersection(cs[:i] + cs[i + 1 :]) is not None for i in range(len(cs))
        )


def _set_product(g: GroupTable, a: int, b: int) -> int:
    p = g.product
    bl = bits_to_list(b)
    out = 0
    for x in bits_to_list(a):
        row = p[x]
        for y in bl:
            out |= 1 << row[y]
    return out


def _witness_of_size(g: GroupTable, lat: SubgroupLattice, s: int):
    """Lexicographically least minimal empty family of ``s >= 3`` cosets.

    After sorting the cosets by subgroup id and translating so the first
    s - 1 contain the identity, the family is ``G_1, ..., G_{s-1}, h G_s``.
    It is minimal and empty exactly when h avoids ``I G_s`` but lies in every
    ``I_t G_s``, where I is the intersection of the first s - 1 subgroups and
    I_t omits G_t.
    """
    subs = lat.subgroups
    for prefix in independent_families(lat, max_size=s - 1):
        if len(prefix) != s - 1:
            continue
        for j in range(prefix[-1] + 1, len(lat)):
            fam = prefix + (j,)
            if not all(
                is_intersection_independent(lat, fam[:t] + fam[t + 1 :]) for t in range(s - 1)
            ):
                continue
            gj = subs[j]
            allowed = -1
            for t in range(s - 1):
                rest = lat.intersection(prefix[:t] + prefix[t + 1 :])
                allowed &= _set_product(g, rest, gj)
            allowed &= ~_set_product(g, lat.intersection(prefix), gj)
            if allowed:
                h = (allowed & -allowed).bit_length() - 1
                cosets = tuple(left_coset(g, subs[i], g.identity) for i in prefix)
                return fam, HellyWitness(cosets + (left_coset(g, gj, h),))
    return None


def kappa_exact(g: GroupTable, lat: SubgroupLattice | None = None):
    """Helly dimension and a canonical witness family.

    Returns ``(kappa, witness)``.  The trivial group gets kappa = 1 and no
    witness.  Among the maximum size minimal empty families the witness is
    least by (subgroup ids, representatives).
    """
    lat = lat or enumerate_subgroups(g)
    if g.order == 1:
        return 1, None
    for s in range(mu(lat) + 1, 2, -1):
        found = _witness_of_size(g, lat, s)
        if found is not None:
            return s, found[1]
    trivial = lat.subgroups[lat.trivial]
    other = min(x for x in range(g.order) if x != g.identity)
    return 2, HellyWitness(
        (left_coset(g, trivial, g.identity), left_coset(g, trivial, other))
    )


def all_cosets(g: GroupTable, lat: SubgroupLattice) -> list[Coset]:
    out = []
    for h in lat.subgroups:
        seen = 0
        for x in range(g.order):
            if not seen >> x & 1:
                c = left_coset(g, h, x)
                seen |= c.members
                out.append(c)
    return out


def kappa_oracle(g: GroupTable, lat: SubgroupLattice, cap: int) -> int:
    """Helly dimension straight from the definition, over families of at most
    ``cap`` distinct cosets.

    The answer is 1 + the largest n for which some empty family of size > n
    has all n-subfamilies meeting.  Families containing a disjoint pair only
    fail n = 1, so beyond that only pairwise-meeting families are explored.
    The result is the true value once ``cap >= mu(G) + 1``.
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    cosets = [c.members for c in all_cosets(g, lat)]
    k = len(cosets)
    meets = [sum(1 << j for j in range(k) if cosets[i] & cosets[j]) for i in range(k)]
    worst = 0  # largest n failing so far
    if cap >= 2 and any(meets[i] != (1 << k) - 1 for i in range(k)):
        worst = 1

    def all_subsets_meet(fam, n):
        return all(_and(cosets[i] for i in sub) for sub in combinations(fam, n))

    def search(fam, candidates, inter):
        nonlocal worst
        if len(fam) >= 3 and not inter:
            n = len(fam) - 1
            while n > worst and not all_subsets_meet(fam, n):
                n -= 1
            worst = max(worst, n)
        if len(fam) == cap:
            return
        while candidates:
            j = (candidates & -candidates).bit_length() - 1
            candidates &= candidates - 1
            search(fam + [j], candidates & meets[j], inter & cosets[j])

    search([], (1 << k) - 1, -1)
    return worst + 1


def _and(it: Iterable[int]) -> int:
    acc = -1
    for x in it:
        acc &= x
    return acc


# -- reports ------------------------------------------------------------------

QUOTIENT_CHAIN_LENGTH = {"tetrahedral": 3, "octahedral": 4, "icosahedral": 4}


def witness_json(g: GroupTable, w: HellyWitness | None) -> list[dict]:
    if w is None:
        return []
    return [
        {
            "subgroup_size": popcount(c.subgroup),
            "representative_label": g.labels[c.representative],
            "members": bits_to_list(c.members),
        }
        for c in w.cosets
    ]


def group_report(g: GroupTable, lat: SubgroupLattice | None = None) -> dict:
    """kappa, mu, lambda, witness and the bound checks for one group."""
    lat = lat or enumerate_subgroups(g)
    kappa, witness = kappa_exact(g, lat)
    m, lam = mu(lat), chain_length(lat)
    checks = {"kappa<=mu+1": kappa <= m + 1, "mu<=lambda": m <= lam}
    kind = g.provenance[0]
    if kind == "cyclic" and g.order > 1:
        checks["kappa==2"] = kappa == 2
    elif kind == "dicyclic":
        checks["kappa<=4"] = kappa <= 4
    elif kind == "binary":
        tag = BINARY_ALIASES.get(g.provenance[1], g.provenance[1])
        checks["kappa<=6"] = kappa <= 6
        checks["lambda==lambda(quotient)+1"] = lam == QUOTIENT_CHAIN_LENGTH[tag] + 1
    return {
        "group": g.name,
        "order": g.order,
        "kappa": kappa,
        "mu": m,
        "lambda": lam,
        "checks": checks,
        "bounds_ok": all(checks.values()),
        "witness": witness_json(g, witness),
    }


def default_zoo() -> list[GroupTable]:
    from .groups import build_binary_polyhedral, build_cyclic, build_dicyclic

    return (
        [build_cyclic(n) for n in range(2, 61)]
        + [build_dicyclic(n) for n in range(2, 13)]
        + [build_binary_polyhedral(t) for t in ("tetrahedral", "octahedral", "icosahedral")]
    )


def verify_helly_bounds(zoo: Sequence[GroupTable] | None = None, cache_dir=None) -> dict:
    """Check every Helly-dimension bound on each group of ``zoo``.

    The report is ``{"groups": [...], "ok": bool, "violations": [...]}`` with
    groups kept in zoo order.
    """
    zoo = default_zoo() if zoo is None else zoo
    rows = [group_report(g, enumerate_subgroups(g, cache_dir)) for g in zoo]
    violations = [
        f"{r['group']}: {name}" for r in rows for name, ok in r["checks"].items() if not ok
    ]
    return {"groups": rows, "ok": not violations, "violations": violations}
