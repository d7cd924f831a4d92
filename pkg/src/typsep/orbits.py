"""Orbit equality of tuples under finite group actions.

For a finite group, two points of a module are separated by invariants
exactly when their orbits differ, so everything here is phrased as orbit
equality.  The set of group elements carrying ``x`` to ``x'`` is empty or a
left coset of the stabilizer of ``x``; tuples lie in one orbit exactly when
the per-coordinate transporters share an element.
"""

from __future__ import annotations

import hashlib
import json
import random
from collections import Counter
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .fields import GF, gf
from .groups import GroupTable, generated_subgroup
from .helly import Coset, HellyWitness, kappa_exact
from .lattice import SubgroupLattice, bits_to_list, enumerate_subgroups

GLOBAL_EQUAL = "GLOBAL_EQUAL"
DWISE_FAILS = "DWISE_FAILS"
COUNTEREXAMPLE = "COUNTEREXAMPLE"


def generating_set(g: GroupTable) -> list[int]:
    gens, span = [], 1 << g.identity
    for x in range(g.order):
        if not span >> x & 1:
            gens.append(x)
            span = generated_subgroup(g, gens)
    return gens


class ActionTable:
    """A left action of ``group`` on points ``0 .. points - 1``.

    ``act[g][x]`` is the image of point x under element g.
    """

    def __init__(self, group: GroupTable, act: Sequence[Sequence[int]], blocks=None):
        self.group = group
        self.act = tuple(tuple(row) for row in act)
        self.points = len(self.act[0]) if self.act else 0
        # optional (start, stop) point ranges, one per transitive block
        self.blocks = tuple(blocks) if blocks else ((0, self.points),)
        if len(self.act) != group.order:
            raise ValueError("need one row per group element")
        e = group.identity
        if self.act[e] != tuple(range(self.points)):
            raise ValueError("identity does not act trivially")
        # g(s(x)) == (gs)(x) for generators s implies the full action law
        for s in generating_set(group):
            for g in range(group.order):
                gs, ag, as_ = self.act[group.product[g][s]], self.act[g], self.act[s]
                if any(ag[as_[x]] != gs[x] for x in range(self.points)):
                    raise ValueError("table is not a group action")

    def apply(self, g: int, x: int) -> int:
        return self.act[g][x]

    def describe(self) -> dict:
        return {"kind": "gset", "group": self.group.content_hash(), "act": self.act}


class LinearAction:
    """A representation of ``group`` on GF(q)^n.

    ``matrices[g]`` is an n x n tuple of rows with entries encoded as in
    :class:`~typsep.fields.GF`.  Vectors are tuples of such ints.
    """

    def __init__(self, group: GroupTable, field: GF | int, matrices: Sequence):
        self.group = group
        self.field = gf(field) if isinstance(field, int) else field
        self.matrices = tuple(tuple(tuple(r) for r in m) for m in matrices)
        if len(self.matrices) != group.order:
            raise ValueError("need one matrix per group element")
        self.dimension = len(self.matrices[0])
        self._sparse = tuple(
            tuple(tuple((j, a) for j, a in enumerate(row) if a) for row in m)
            for m in self.matrices
        )
        n = self.dimension
        ident = tuple(tuple(int(i == j) for j in range(n)) for i in range(n))
        if self.matrices[group.identity] != ident:
            raise ValueError("identity must act as the identity matrix")
        for s in generating_set(group):
            for g in range(group.order):
                if self._matmul(g, s) != self.matrices[group.product[g][s]]:
                    raise ValueError("matrices do not form a representation")

    def _matmul(self, g: int, h: int):
        n, add, mul = self.dimension, self.field.add, self.field.mul
        a, b = self.matrices[g], self.matrices[h]
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = 0
                for k in range(n):
                    acc = add(acc, mul(a[i][k], b[k][j]))
                row.append(acc)
            out.append(tuple(row))
        return tuple(out)

    def apply(self, g: int, v: Sequence[int]) -> tuple[int, ...]:
        add, mul = self.field.add, self.field.mul
        out = []
        for row in self._sparse[g]:
            acc = 0
            for j, a in row:
                acc = add(acc, mul(a, v[j]))
            out.append(acc)
        return tuple(out)

    def describe(self) -> dict:
        return {
            "kind": "linear",
            "group": self.group.content_hash(),
            "q": self.field.q,
            "matrices": self.matrices,
        }


@dataclass(frozen=True)
class TupleInstance:
    action: ActionTable | LinearAction
    x: tuple
    x_prime: tuple

    def __post_init__(self):
        if len(self.x) != len(self.x_prime):
            raise ValueError("tuples must have equal length")

    @property
    def m(self) -> int:
        return len(self.x)

    def content_hash(self) -> str:
        blob = json.dumps(
            [self.action.describe(), list(self.x), list(self.x_prime)],
            sort_keys=True,
            default=list,
        )
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


# -- transporters ---------------------------------------------------------------


def _transporter_bits(action, x, x_prime) -> int:
    bits = 0
    for g in range(action.group.order):
        if action.apply(g, x) == x_prime:
            bits |= 1 << g
    return bits


def transporter(action, x, x_prime) -> Coset | None:
    """``{g : g.x = x'}`` as a left coset of the stabilizer of x, or None."""
    members = _transporter_bits(action, x, x_prime)
    if not members:
        return None
    stab = _transporter_bits(action, x, x)
    return Coset(stab, (members & -members).bit_length() - 1, members)


def same_orbit(t: TupleInstance):
    """``(True, g)`` with the least g mapping x to x', or ``(False, None)``."""
    common = -1
    for a, b in zip(t.x, t.x_prime):
        common &= _transporter_bits(t.action, a, b)
        if not common:
            return False, None
    if common == -1:  # empty tuples
        return True, t.action.group.identity
    return True, (common & -common).bit_length() - 1


@dataclass(frozen=True)
class DwiseVerdict:
    d: int
    verdict: str
    witness_element: int | None = None
    failing_indices: tuple[int, ...] | None = None

    def to_json(self, t: TupleInstance) -> dict:
        out = {"instance_hash": t.content_hash(), "d": self.d, "verdict": self.verdict}
        if self.witness_element is not None:
            out["witness_element"] = self.witness_element
        return out


def dwise_implies_global(t: TupleInstance, d: int) -> DwiseVerdict:
    """Compare orbit equality of all d-fold projections with that of the tuples.

    ``COUNTEREXAMPLE`` means every d-fold projection of x and x' lies in one
    orbit while the full tuples do not.
    """
    if not 1 <= d <= t.m:
        raise ValueError(f"need 1 <= d <= m = {t.m}")
    trans = [_transporter_bits(t.action, a, b) for a, b in zip(t.x, t.x_prime)]
    common = -1
    for b in trans:
        common &= b
    if common:
        return DwiseVerdict(d, GLOBAL_EQUAL, (common & -common).bit_length() - 1)
    for idx in combinations(range(t.m), d):
        acc = -1
        for i in idx:
            acc &= trans[i]
        if not acc:
            return DwiseVerdict(d, DWISE_FAILS, failing_indices=idx)
    return DwiseVerdict(d, COUNTEREXAMPLE)


# -- constructions ----------------------------------------------------------------


def coset_space_action(g: GroupTable, subgroups: Sequence[int]):
    """Disjoint union of the coset spaces G/H for the given subgroup bitsets.

    Returns ``(action, base_points)`` where ``base_points[i]`` is the point
    H_i itself, whose stabilizer is H_i.
    """
    points: list[tuple[int, int]] = []  # (block, coset bitset)
    base, blocks = [], []
    index: dict[tuple[int, int], int] = {}
    for k, h in enumerate(subgroups):
        start = len(points)
        seen = 0
        for x in range(g.order):
            if seen >> x & 1:
                continue
            c = 0
            for y in bits_to_list(h):
                c |= 1 << g.product[x][y]
            seen |= c
            index[(k, c)] = len(points)
            points.append((k, c))
        base.append(index[(k, h)])
        blocks.append((start, len(points)))
    act = []
    for el in range(g.order):
        row = g.product[el]
        out = []
        for k, c in points:
            img = 0
            for y in bits_to_list(c):
                img |= 1 << row[y]
            out.append(index[(k, img)])
        act.append(out)
    return ActionTable(g, act, blocks), base


def witness_instance(g: GroupTable, w: HellyWitness) -> TupleInstance:
    """Tuples over a G-set realizing a minimal empty coset family.

    Coordinate i lives in G/G_i; x_i is the base point and x'_i = g_i x_i, so
    the transporter of coordinate i is exactly the i-th coset.  Every proper
    subtuple is then orbit-equivalent and the full tuples are not.
    """
    if not w.is_valid():
        raise ValueError("not a minimal empty coset family")
    distinct = list(dict.fromkeys(c.subgroup for c in w.cosets))
    action, base = coset_space_action(g, distinct)
    x, xp = [], []
    for c in w.cosets:
        p = base[distinct.index(c.subgroup)]
        x.append(p)
        xp.append(action.apply(c.representative, p))
    return TupleInstance(action, tuple(x), tuple(xp))


def permutation_module(action: ActionTable, q: int) -> LinearAction:
    """GF(q)^X with G permuting the basis vectors like the points of X."""
    n = action.points
    mats = []
    for g in range(action.group.order):
        m = [[0] * n for _ in range(n)]
        for p in range(n):
            m[action.apply(g, p)][p] = 1
        mats.append(m)
    return LinearAction(action.group, q, mats)


def embed_instance(t: TupleInstance, q: int) -> TupleInstance:
    """Send each point of a G-set instance to its basis vector in GF(q)^X."""
    lin = permutation_module(t.action, q)
    n = lin.dimension

    def e(p):
        return tuple(int(i == p) for i in range(n))

    return TupleInstance(lin, tuple(map(e, t.x)), tuple(map(e, t.x_prime)))


def diagonal_cyclic_action(n: int, q: int, diagonal: Sequence[int]) -> LinearAction:
    """C_n acting on GF(q)^k with generator ``diag(diagonal)`` (entries as ints)."""
    from .groups import build_cyclic

    g, F = build_cyclic(n), gf(q)
    mats = []
    for k in range(n):
        diag = [1] * len(diagonal)
        for _ in range(k):
            diag = [F.mul(a, b) for a, b in zip(diag, diagonal)]
        mats.append([[diag[i] if i == j else 0 for j in range(len(diag))] for i in range(len(diag))])
    return LinearAction(g, F, mats)


# -- randomized checks --------------------------------------------------------


def _random_point(action, rng: random.Random):
    if isinstance(action, LinearAction):
        return tuple(rng.randrange(action.field.q) for _ in range(action.dimension))
    start, stop = rng.choice(action.blocks)
    return rng.randrange(start, stop)


def random_instance(action, m: int, rng: random.Random) -> TupleInstance:
    """Random tuples whose coordinates are pairwise in the same orbit.

    Points are drawn block by block, so coset spaces of large subgroups are
    as likely as the regular one.  Each x'_i is x_i moved by an element from
    a random pool of at most m elements, so many projections agree and the
    d-wise test is not vacuous.  One time in eight the second tuple is drawn
    independently instead.
    """
    x = tuple(_random_point(action, rng) for _ in range(m))
    if rng.randrange(8) == 0:
        return TupleInstance(action, x, tuple(_random_point(action, rng) for _ in range(m)))
    pool = [rng.randrange(action.group.order) for _ in range(rng.randint(1, m))]
    xp = tuple(action.apply(rng.choice(pool), p) for p in x)
    return TupleInstance(action, x, xp)


def verify_reductive_bound(
    a: LinearAction,
    trials: int,
    seed: int,
    d: int | None = None,
    m_range: tuple[int, int] | None = None,
    instances: Sequence[TupleInstance] = (),
) -> dict:
    """Check that d-fold orbit equality forces orbit equality on V^m.

    ``d`` defaults to dim V + 1 and ``m`` is drawn from ``[n + 2, n + 4]``.
    Explicit ``instances`` are checked as well.  Every trial uses its own
    ``random.Random`` stream derived from ``(seed, trial)``, so the report
    does not depend on evaluation order.
    """
    n = a.dimension
    d = n + 1 if d is None else d
    lo, hi = m_range or (n + 2, n + 4)
    verdicts: Counter = Counter()
    violations = []
    cases = list(instances)
    for k in range(trials):
        rng = random.Random(f"{seed}:{k}")
        cases.append(random_instance(a, rng.randint(max(lo, d), max(hi, d)), rng))
    for t in cases:
        v = dwise_implies_global(t, d)
        verdicts[v.verdict] += 1
        if v.verdict == COUNTEREXAMPLE:
            violations.append({"x": list(t.x), "x_prime": list(t.x_prime)})
    return {
        "dimension": n,
        "field": a.field.q,
        "d": d,
        "trials": len(cases),
        "seed": seed,
        "verdicts": dict(sorted(verdicts.items())),
        "violations": violations[:5],
        "violation_count": len(violations),
        "ok": not violations,
    }


def probe_actions(g: GroupTable, lat: SubgroupLattice, rng: random.Random, linear: bool = True):
    """A few G-sets (unions of coset spaces) and small permutation modules.

    The first action is the union of G/H over all proper subgroups H.
    """
    proper = [h for h in lat.subgroups if h != lat.subgroups[lat.whole]]
    actions = [coset_space_action(g, proper)[0]]
    for _ in range(3):
        k = rng.randint(1, min(3, len(proper)))
        actions.append(coset_space_action(g, rng.sample(proper, k))[0])
    if linear:
        big = sorted(proper, key=lambda h: -bin(h).count("1"))
        for q in (2, 3):
            h = rng.choice(big[: max(1, len(big) // 2)])
            actions.append(permutation_module(coset_space_action(g, [h])[0], q))
    return actions


def near_witness_instance(
    g: GroupTable, w: HellyWitness, m: int, rng: random.Random
) -> TupleInstance:
    """The witness tuple padded to length m, shuffled and translated.

    Lives on the union of G/H over the witness subgroups.  Padding coordinates
    are moved by elements lying in the intersection of all but one witness
    coset, which keeps most low-order projections orbit-equivalent.
    """
    base_t = witness_instance(g, w)
    action = base_t.action
    cs = w.cosets
    pool = []
    for i in range(len(cs)):
        inter = coset_intersection_bits(c.members for j, c in enumerate(cs) if j != i)
        pool.append(rng.choice(bits_to_list(inter)))
    x, xp = list(base_t.x), list(base_t.x_prime)
    while len(x) < m:
        p = _random_point(action, rng)
        x.append(p)
        xp.append(action.apply(rng.choice(pool), p))
    order = list(range(len(x)))
    rng.shuffle(order)
    shift = rng.randrange(g.order)
    return TupleInstance(
        action,
        tuple(x[i] for i in order),
        tuple(action.apply(shift, xp[i]) for i in order),
    )


def coset_intersection_bits(members) -> int:
    acc = -1
    for b in members:
        acc &= b
    return acc


def duality_trials(
    g: GroupTable,
    lat: SubgroupLattice,
    d: int,
    trials: int,
    seed: int,
    witness: HellyWitness | None = None,
    max_m: int = 6,
) -> Counter:
    """Verdict counts of the d-wise test over random tuples with m <= max_m.

    Trial k uses ``random.Random(f"{seed}:{k}")``; every fourth trial is a
    padded witness tuple when a witness of size <= max_m is given, the rest
    cycle through :func:`probe_actions`.
    """
    actions = probe_actions(g, lat, random.Random(f"actions:{seed}:{g.content_hash()}"))
    use_witness = witness is not None and len(witness) <= max_m
    verdicts: Counter = Counter()
    for k in range(trials):
        r = random.Random(f"{seed}:{k}")
        if use_witness and k % 4 == 3:
            t = near_witness_instance(g, witness, r.randint(max(d, len(witness)), max_m), r)
        else:
            a = actions[k % len(actions)]
            t = random_instance(a, r.randint(d, max(max_m, d)), r)
        verdicts[dwise_implies_global(t, d).verdict] += 1
    return verdicts


def orbit_duality_check(
    g: GroupTable,
    trials: int,
    seed: int,
    lat: SubgroupLattice | None = None,
    max_m: int = 6,
) -> dict:
    """Both halves of "Helly dimension = worst d-wise orbit test" on one group.

    At d = kappa no tuple pair over the test actions may be a counterexample;
    at d = kappa - 1 the witness instance (and its permutation-module
    embedding over GF(2)) must be one.
    """
    lat = lat or enumerate_subgroups(g)
    kappa, witness = kappa_exact(g, lat)
    report = {"group": g.name, "kappa": kappa}
    if witness is not None:
        t = witness_instance(g, witness)
        low = [dwise_implies_global(t, kappa - 1).verdict]
        low.append(dwise_implies_global(embed_instance(t, 2), kappa - 1).verdict)
        report["witness_verdicts"] = low
        report["lower_ok"] = all(v == COUNTEREXAMPLE for v in low)
    else:
        report["lower_ok"] = True
    verdicts = duality_trials(g, lat, kappa, trials, seed, witness, max_m)
    report["trials"] = trials
    report["verdicts"] = dict(sorted(verdicts.items()))
    report["counterexamples"] = verdicts[COUNTEREXAMPLE]
    report["ok"] = report["lower_ok"] and not report["counterexamples"]
    return report
