"""Acceptance criteria, one test each.  Every test prints a single
``criterion N: PASS|FAIL ...`` line (also repeated in the terminal summary)."""

import random
import time

from typsep.binary import (
    BinaryForm,
    common_root_mult_ge,
    has_root_mult_ge,
    limit_along_torus,
    multiplicity_profile,
)
from typsep.groups import (
    abelianization_order,
    build_binary_polyhedral,
    build_cyclic,
    build_dicyclic,
    center,
)
from typsep.helly import default_zoo, kappa_exact, kappa_oracle
from typsep.lattice import chain_length, enumerate_subgroups, mu
from typsep.orbits import orbit_duality_check
from typsep.torus import char2_variant, displayed_monomial, sharpness_check, sharpness_weights

import form_oracle as fo
from conftest import ACCEPTANCE_LINES, group


def record(n, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'} {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_1_cyclic():
    t0 = time.perf_counter()
    bad = []
    for n in range(2, 61):
        g = build_cyclic(n)
        lat = enumerate_subgroups(g)
        k, _ = kappa_exact(g, lat)
        if k != 2:
            bad.append((n, "exact", k))
        if n <= 24:
            o = kappa_oracle(g, lat, mu(lat) + 1)
            if o != k:
                bad.append((n, "oracle", o))
    dt = time.perf_counter() - t0
    record(1, not bad and dt < 10,
           f"kappa(C_n)=2 for 2<=n<=60, oracle agrees for n<=24, {dt:.2f}s (<10s) {bad or ''}")


def test_criterion_2_dicyclic():
    t0 = time.perf_counter()
    values, bad = {}, []
    for n in range(2, 13):
        g = build_dicyclic(n)
        lat = enumerate_subgroups(g)
        k, _ = kappa_exact(g, lat)
        values[n] = k
        if k > 4:
            bad.append((n, k))
        if n <= 6 and kappa_oracle(g, lat, mu(lat) + 1) != k:
            bad.append((n, "oracle"))
    dt = time.perf_counter() - t0
    record(2, not bad and dt < 60, f"kappa(Dic_n)<=4, values {values}, oracle n<=6, {dt:.2f}s (<60s)")


def test_criterion_3_binary_polyhedral(tmp_path):
    values, timings = {}, {}
    for rnd in ("cold", "warm"):
        t0 = time.perf_counter()
        for tag in ("tetrahedral", "octahedral", "icosahedral"):
            g = build_binary_polyhedral(tag)
            values[tag] = kappa_exact(g, enumerate_subgroups(g, tmp_path))[0]
        timings[rnd] = round(time.perf_counter() - t0, 2)
    ok = all(k <= 6 for k in values.values()) and max(timings.values()) < 600
    record(3, ok, f"kappa <= 6: {values}, cached lattice runs {timings}s (<600s)")


def test_criterion_4_lambda():
    expected = {"binary:tet": 4, "binary:oct": 5, "binary:ico": 5,
                "alternating:4": 3, "symmetric:4": 4, "alternating:5": 4}
    got = {s: chain_length(enumerate_subgroups(group(s))) for s in expected}
    record(4, got == expected, f"lambda values {got}")


def test_criterion_5_bounds():
    bad, rows = [], 0
    for g in default_zoo():
        lat = enumerate_subgroups(g)
        k, m, lam = kappa_exact(g, lat)[0], mu(lat), chain_length(lat)
        rows += 1
        if not (k <= m + 1 and m <= lam):
            bad.append((g.name, k, m, lam))
    record(5, not bad, f"kappa<=mu+1 and mu<=lambda on {rows} zoo groups {bad or ''}")


def test_criterion_6_orbit_duality():
    t0 = time.perf_counter()
    zoo = [g for g in default_zoo() if g.order <= 48]
    trials_per_group, total, bad = 200, 0, []
    for g in zoo:
        r = orbit_duality_check(g, trials_per_group, seed=2024, max_m=6)
        total += r["trials"]
        if not r["ok"]:
            bad.append((g.name, r.get("witness_verdicts"), r["counterexamples"]))
    dt = time.perf_counter() - t0
    ok = not bad and total >= 10**4 and dt < 300
    record(6, ok, f"{len(zoo)} groups: witness COUNTEREXAMPLE at d=kappa-1, "
                  f"0 counterexamples at d=kappa over {total} trials (>=10^4), {dt:.1f}s (<300s) {bad or ''}")


def test_criterion_7_torus_sharpness():
    t0 = time.perf_counter()
    rows = [sharpness_check(n, 12) for n in (3, 4, 5)]
    full_ok = all(
        r["full_support"] == displayed_monomial(n).render(sharpness_weights(n))
        for n, r in zip((3, 4, 5), rows)
    )
    # n = 3 once more with every coordinate in play, no zero-coordinate shortcut
    plain = sharpness_check(3, 12, skip_zero_coords=False)
    char2 = [char2_variant(n, 12) for n in (3, 4)]
    dt = time.perf_counter() - t0
    ok = full_ok and all(r["ok"] for r in rows + char2 + [plain]) and dt < 120
    record(7, ok, f"displayed monomial separates for n=3,4,5, no n-copy separation up to degree 12, "
                  f"GF(4) variant n=3,4 agrees, {dt:.1f}s (<120s)")


def test_criterion_8_binary_oracle():
    t0 = time.perf_counter()
    forms = fo.seeded_forms(200, seed=8)
    assert {f.degree for f in forms} <= set(range(2, 11))
    bad = []
    rng = random.Random("limits:8")
    thresholds = lambda d: [k / 2 for k in range(1, 2 * d + 3)]
    for i, known in enumerate(forms):
        p = multiplicity_profile(known.form)
        if (p.infinity_mult, p.finite_profile) != known.profile():
            bad.append((i, "profile"))
        for t in thresholds(known.degree):
            if has_root_mult_ge(known.form, t) != (known.max_mult() >= t):
                bad.append((i, "root", t))
        lp, mp, kind, expected = fo.limit_case(known, rng)
        lim = limit_along_torus(known.form, fo.linear(lp), fo.linear(mp))
        if lim.kind != kind or (expected is not None and lim.form != expected):
            bad.append((i, "limit"))
    tuples = fo.tuples_of(forms, seed=8)
    for tup in tuples:
        for t in thresholds(tup[0].degree):
            if common_root_mult_ge([k.form for k in tup], t) != fo.common_mult(tup, t):
                bad.append(("tuple", t))
    x, y = BinaryForm.linear(1, 0), BinaryForm.linear(0, 1)
    kinds = [limit_along_torus(v, x, y).kind for v in (x**3 * y, x * x * y * y, x * y**3)]
    balanced = limit_along_torus(x * x * y * y, x, y).form == x * x * y * y
    dt = time.perf_counter() - t0
    ok = not bad and kinds == ["Zero", "Balanced", "NoLimit"] and balanced and dt < 30
    record(8, ok, f"200 product forms, {len(tuples)} tuples agree with the factorization oracle; "
                  f"limit examples {kinds}; {dt:.1f}s (<30s) {bad[:5] or ''}")


def test_criterion_9_constructions():
    got = {}
    for tag in ("tetrahedral", "octahedral", "icosahedral"):
        g = build_binary_polyhedral(tag)
        got[tag] = (g.order, len(center(g)), abelianization_order(g))
    expected = {"tetrahedral": (24, 2, 3), "octahedral": (48, 2, 2), "icosahedral": (120, 2, 1)}
    record(9, got == expected, f"(order, |Z|, |G/G'|) = {got}")
