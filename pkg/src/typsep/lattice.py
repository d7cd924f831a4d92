"""Subgroup lattices of small finite groups, with chain length and the
maximal size of an intersection independent family.

Subgroups are Python ints used as bitsets: bit ``i`` is element index ``i``.
"""

from __future__ import annotations

import hashlib
import json
import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .groups import GroupTable, generated_subgroup

log = logging.getLogger(__name__)

CACHE_FORMAT_VERSION = 1
CACHE_MIN_ORDER = 48


def popcount(bits: int) -> int:
    return bin(bits).count("1")


def bits_to_list(bits: int) -> list[int]:
    out, i = [], 0
    while bits:
        if bits & 1:
            out.append(i)
        bits >>= 1
        i += 1
    return out


def big_omega(n: int) -> int:
    """Number of prime factors of n counted with multiplicity."""
    k, p = 0, 2
    while p * p <= n:
        while n % p == 0:
            n //= p
            k += 1
        p += 1
    return k + (n > 1)


@dataclass(frozen=True)
class SubgroupSet:
    id: int
    members: int

    @property
    def size(self) -> int:
        return popcount(self.members)

    def elements(self) -> list[int]:
        return bits_to_list(self.members)


class SubgroupLattice:
    """All subgroups of ``group`` sorted by ``(size, bitset)``, plus inclusion.

    ``contained_in[i]`` is a bitset over subgroup ids: bit ``j`` is set when
    subgroup ``j`` is a subgroup of subgroup ``i`` (including ``j == i``).
    """

    def __init__(self, group: GroupTable, subgroups: Iterable[int]):
        self.group = group
        self.subgroups: tuple[int, ...] = tuple(
            sorted(set(subgroups), key=lambda b: (popcount(b), b))
        )
        self.sizes = tuple(popcount(b) for b in self.subgroups)
        self._index = {b: i for i, b in enumerate(self.subgroups)}
        subs = self.subgroups
        self.contained_in = tuple(
            sum(1 << j for j, h in enumerate(subs) if h & ~k == 0) for k in subs
        )

    def __len__(self) -> int:
        return len(self.subgroups)

    def __getitem__(self, i: int) -> SubgroupSet:
        return SubgroupSet(i, self.subgroups[i])

    @property
    def trivial(self) -> int:
        return 0

    @property
    def whole(self) -> int:
        return len(self.subgroups) - 1

    def id_of(self, bits: int) -> int:
        return self._index[bits]

    def contains(self, big: int, small: int) -> bool:
        """True when subgroup id ``small`` is contained in subgroup id ``big``."""
        return bool(self.contained_in[big] >> small & 1)

    def containment_pairs(self) -> list[tuple[int, int]]:
        return [
            (small, big)
            for big in range(len(self))
            for small in bits_to_list(self.contained_in[big])
            if small != big
        ]

    def intersection(self, ids: Iterable[int]) -> int:
        acc = (1 << self.group.order) - 1
        for i in ids:
            acc &= self.subgroups[i]
        return acc


# -- enumeration -------------------------------------------------------------


def _close(g: GroupTable, seed: int) -> int:
    return generated_subgroup(g, bits_to_list(seed))


def _enumerate(g: GroupTable) -> list[int]:
    # seed with cyclic subgroups, then close under pairwise joins
    gens: dict[int, list[int]] = {}
    for x in range(g.order):
        h = generated_subgroup(g, [x])
        if h not in gens:
            gens[h] = [x]
    work = list(gens)
    known = list(gens)
    while work:
        h = work.pop()
        for k in list(known):
            if h & ~k == 0 or k & ~h == 0:
                continue
            j = generated_subgroup(g, gens[h] + gens[k])
            if j not in gens:
                gens[j] = gens[h] + gens[k]
                known.append(j)
                work.append(j)
    return known


def _cache_path(cache_dir: Path, g: GroupTable) -> Path:
    return Path(cache_dir) / f"lattice-{g.content_hash()[:24]}.json"


def _payload_digest(subgroups: Sequence[str], pairs: Sequence[Sequence[int]]) -> str:
    blob = json.dumps([list(subgroups), [list(p) for p in pairs]], separators=(",", ":"))
    return hashlib.sha256(blob.encode()).hexdigest()


def lattice_to_json(lat: SubgroupLattice) -> dict:
    subs = [format(b, "x") for b in lat.subgroups]
    pairs = [list(p) for p in lat.containment_pairs()]
    return {
        "format_version": CACHE_FORMAT_VERSION,
        "group_hash": lat.group.content_hash(),
        "subgroups": subs,
        "containment": pairs,
        "payload_sha256": _payload_digest(subs, pairs),
    }


def lattice_from_json(g: GroupTable, data: dict) -> SubgroupLattice:
    """Rebuild a lattice from its cache record, rejecting anything inconsistent."""
    if data.get("format_version") != CACHE_FORMAT_VERSION:
        raise ValueError("cache format version mismatch")
    if data.get("group_hash") != g.content_hash():
        raise ValueError("cache belongs to a different group")
    subs, pairs = data["subgroups"], data["containment"]
    if data.get("payload_sha256") != _payload_digest(subs, pairs):
        raise ValueError("cache payload checksum mismatch")
    lat = SubgroupLattice(g, (int(s, 16) for s in subs))
    if [format(b, "x") for b in lat.subgroups] != list(subs):
        raise ValueError("cached subgroups are not in canonical order")
    if sorted(map(tuple, pairs)) != sorted(lat.containment_pairs()):
        raise ValueError("cached containment relation is wrong")
    p, full = g.product, (1 << g.order) - 1
    for h in lat.subgroups:
        if h & ~full or not h >> g.identity & 1:
            raise ValueError("cached subgroup is not a subset containing the identity")
        elems = bits_to_list(h)
        for x in elems:
            row = p[x]
            for y in elems:
                if not h >> row[y] & 1:
                    raise ValueError("cached subgroup is not closed")
    return lat


def enumerate_subgroups(g: GroupTable, cache_dir: str | Path | None = None) -> SubgroupLattice:
    """Every subgroup of ``g``.

    Groups of order >= 48 are cached under ``cache_dir`` when one is given; a
    damaged or stale cache file is discarded and rewritten.
    """
    path = None
    if cache_dir is not None and g.order >= CACHE_MIN_ORDER:
        path = _cache_path(Path(cache_dir), g)
        if path.exists():
            try:
                return lattice_from_json(g, json.loads(path.read_text()))
            except (ValueError, KeyError, TypeError, json.JSONDecodeError) as exc:
                log.warning("ignoring lattice cache %s: %s", path, exc)
    lat = SubgroupLattice(g, _enumerate(g))
    if path is not None:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(lattice_to_json(lat), sort_keys=True))
        tmp.replace(path)
    return lat


# -- statistics --------------------------------------------------------------


def chain_length(lat: SubgroupLattice) -> int:
    """Most subgroups in a strictly increasing chain of proper subgroups.

    The trivial subgroup counts, the whole group does not, so the chain
    ``1 < C2 < V4`` in A4 has length 3.
    """
    longest = [0] * len(lat)
    for i in range(len(lat)):
        below = [longest[j] for j in bits_to_list(lat.contained_in[i]) if j != i]
        longest[i] = 1 + max(below, default=0)
    return max((longest[i] for i in range(len(lat)) if i != lat.whole), default=0)


lambda_ = chain_length


def is_intersection_independent(lat: SubgroupLattice, ids: Iterable[int]) -> bool:
    """No member contains the intersection of the others.

    For a single subgroup the empty intersection is the whole group, so the
    family is independent exactly when the subgroup is proper.
    """
    ids = list(ids)
    if not ids:
        raise ValueError("need at least one subgroup")
    if len(set(ids)) != len(ids):
        return False
    subs = lat.subgroups
    full = (1 << lat.group.order) - 1
    for i in ids:
        others = full
        for j in ids:
            if j != i:
                others &= subs[j]
        if others & ~subs[i] == 0:
            return False
    return True


def independent_families(lat: SubgroupLattice, max_size: int | None = None, order=None):
    """Yield every intersection independent family as a tuple of ids.

    Families are produced depth first over ``order`` (default: ids ascending),
    so each tuple lists ids in that order.  Independence is inherited by
    subfamilies, which is what allows pruning at every non-independent node.
    """
    subs = lat.subgroups
    full = (1 << lat.group.order) - 1
    order = list(range(len(lat))) if order is None else list(order)
    pos = {sid: k for k, sid in enumerate(order)}

    def extend(fam, others, inter):
        yield tuple(fam)
        if max_size is not None and len(fam) >= max_size:
            return
        start = pos[fam[-1]] + 1 if fam else 0
        for sid in order[start:]:
            s = subs[sid]
            if inter & ~s == 0:
                continue  # running intersection would not shrink
            new_others = [o & s for o in others]
            if any(o & ~subs[t] == 0 for o, t in zip(new_others, fam)):
                continue
            yield from extend(fam + [sid], new_others + [inter], inter & s)

    yield from extend([], [], full)


def mu(lat: SubgroupLattice, with_witness: bool = False):
    """Largest size of an intersection independent family of subgroups.

    Depth-first over subgroups in decreasing size; a branch is cut when even a
    maximal chain below the running intersection could not beat the best
    family found so far.  The witness is the first maximum family in that
    search order.
    """
    subs = lat.subgroups
    full = (1 << lat.group.order) - 1
    order = list(range(len(lat) - 1, -1, -1))
    best: list[int] = []

    def search(fam, others, inter, start):
        nonlocal best
        if len(fam) > len(best):
            best = list(fam)
        if len(fam) + big_omega(popcount(inter)) <= len(best):
            return
        for k in range(start, len(order)):
            sid = order[k]
            s = subs[sid]
            if inter & ~s == 0:
                continue
            new_others = [o & s for o in others]
            if any(o & ~subs[t] == 0 for o, t in zip(new_others, fam)):
                continue
            search(fam + [sid], new_others + [inter], inter & s, k + 1)

    # a singleton is independent iff the subgroup is proper
    for k, sid in enumerate(order):
        if sid == lat.whole:
            continue
        search([sid], [full], subs[sid], k + 1)
    return (len(best), tuple(best)) if with_witness else len(best)
