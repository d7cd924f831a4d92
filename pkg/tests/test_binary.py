import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from typsep.binary import (
    ALL_ZERO,
    CASES,
    BinaryForm,
    case_classify,
    classify_report,
    common_root_mult_ge,
    form_gcd,
    has_root_mult_ge,
    in_basis,
    is_balanced_square,
    limit_along_torus,
    multiplicity_profile,
    orbit_flags,
    transform,
)

import form_oracle as fo

x, y = BinaryForm.linear(1, 0), BinaryForm.linear(0, 1)
x4y4 = BinaryForm.of([1, 0, 0, 0, 1])


def half_thresholds(d):
    return [Fraction(k, 2) for k in range(0, 2 * d + 4)]


# -- spec examples ---------------------------------------------------------------


def test_profile_examples():
    p = multiplicity_profile(x * x * y * y)
    assert (p.infinity_mult, p.finite_profile) == (2, ((2, 1),))
    p = multiplicity_profile(x4y4)
    assert (p.infinity_mult, p.finite_profile) == (0, ((1, 4),))
    p = multiplicity_profile(y**5)
    assert (p.infinity_mult, p.finite_profile) == (5, ())
    with pytest.raises(ValueError):
        multiplicity_profile(BinaryForm.of([0, 0, 0]))


def test_root_threshold_examples():
    assert has_root_mult_ge(x**3 * y, 2)
    assert not has_root_mult_ge(x4y4, 2)
    assert has_root_mult_ge(x * x * y * y, 2)
    assert has_root_mult_ge(x**3, Fraction(3, 2)) and not has_root_mult_ge(x * y * (x + y), Fraction(3, 2))
    with pytest.raises(ValueError):
        has_root_mult_ge(BinaryForm.of([0, 0]), 1)


def test_common_root_examples():
    assert common_root_mult_ge([x * x * y * y, x * x * (x + y) ** 2], 2)
    assert not common_root_mult_ge([x * x * y * y, (x + y) ** 2 * (x - y) ** 2], 2)
    for f in (x**3 * y, x4y4, x * x * y * y):
        for t in half_thresholds(4):
            assert common_root_mult_ge([f], t) == has_root_mult_ge(f, t)
    zero = BinaryForm.of([0] * 5)
    assert common_root_mult_ge([zero, x**3 * y], 3)
    with pytest.raises(ValueError):
        common_root_mult_ge([zero, zero], 1)
    with pytest.raises(ValueError):
        common_root_mult_ge([x, x * y], 1)


def test_balanced_square_examples():
    assert is_balanced_square(x * x * y * y) == (1, x * y)
    assert is_balanced_square((x * x - y * y) ** 2) == (1, x * x - y * y)
    assert is_balanced_square(x**3 * y) is None
    assert is_balanced_square((x * y) ** 3 * 5) == (5, x * y)
    assert is_balanced_square((x * x + y * y) ** 2) == (1, x * x + y * y)
    assert is_balanced_square(x**4) is None
    with pytest.raises(ValueError):
        is_balanced_square(x**3)


def test_limit_examples():
    assert limit_along_torus(x**3 * y, x, y).kind == "Zero"
    lim = limit_along_torus(x * x * y * y, x, y)
    assert lim.kind == "Balanced" and lim.form == x * x * y * y
    assert limit_along_torus(x * y**3, x, y).kind == "NoLimit"
    with pytest.raises(ValueError):
        limit_along_torus(x * y, x, x * 2)


def test_in_basis_reconstructs():
    rng = random.Random(4)
    for _ in range(20):
        f = fo.random_form(rng, rng.randint(1, 6)).form
        l, m = fo.linear(fo.other_point(rng, [])), None
        m = fo.linear(fo.other_point(rng, [(l.coeffs[1], l.coeffs[0])]))
        a = in_basis(f, l, m)
        d = f.degree
        back = BinaryForm.of([0] * (d + 1))
        for i, c in enumerate(a):
            back = back + l**i * m ** (d - i) * c
        assert back == f


def test_orbit_flag_examples():
    assert orbit_flags([x4y4])["closed_maximal_sufficient"]
    assert orbit_flags([x * x * y * y, (x + y) ** 2 * (x - y) ** 2])["closed_maximal_sufficient"]
    r = orbit_flags([x**3 * y, x**4])
    assert not r["closed_maximal_sufficient"] and r["reason"] == "COMMON_HIGH_ROOT"
    assert orbit_flags([BinaryForm.of([0, 0, 0])])["reason"] == ALL_ZERO
    # a single balanced square: neither criterion applies
    assert not orbit_flags([x * y])["maximal_if_closed"]
    assert orbit_flags([x * y, x * (x + y)])["maximal_if_closed"]


def test_case_examples():
    assert case_classify([x4y4, x * x * y * y]) == "I"
    assert case_classify([x**3 * y, x**3 * (x + y)]) == "III"
    assert case_classify([x * x * y * y, x * x * (x + y) ** 2, y * y * (x + y) ** 2]) == "TRIPLE_FRAME"
    assert case_classify([x * x * y * y, (x + y) ** 3 * (x - y)]) == "II"
    assert case_classify([x * x * (x + y) * (x - y), x * x * y * y]) == "IV"
    assert case_classify([x * x * y * y, x * x * (x + y) ** 2]) == "V"
    assert case_classify([x * x * y * y, x * x * y * y * 3, BinaryForm.of([0] * 5)]) == "VI"
    assert case_classify([BinaryForm.of([0] * 3)] * 2) == ALL_ZERO
    assert case_classify([x**2 * y, x * x * (x + y)]) == "III"  # odd degree


def test_classify_report_schema():
    r = classify_report([x * x * y * y, BinaryForm.of([0] * 5)])
    assert r["case"] == "VI" and r["profile"][1] is None
    assert r["profile"][0] == {"infinity_mult": 2, "finite_profile": [[2, 1]]}


def test_form_gcd():
    assert form_gcd([x * x * y, x * y * y]) == x * y
    assert form_gcd([x * (x + y), y]) == BinaryForm(0, (1,))


# -- factorization oracle -------------------------------------------------------------


FORMS = fo.seeded_forms(120, seed=9, quadratics=True)


@pytest.mark.parametrize("k", range(0, 120, 3))
def test_profile_oracle(k):
    known = FORMS[k]
    p = multiplicity_profile(known.form)
    assert (p.infinity_mult, p.finite_profile) == known.profile()
    assert p.infinity_mult + sum(e * deg for e, deg in p.finite_profile) == known.degree
    for t in half_thresholds(known.degree):
        assert has_root_mult_ge(known.form, t) == (t <= 0 or known.max_mult() >= t)


def test_common_root_oracle():
    for tup in fo.tuples_of(FORMS, seed=2):
        forms = [k.form for k in tup]
        for t in half_thresholds(tup[0].degree):
            assert common_root_mult_ge(forms, t) == (t <= 0 or fo.common_mult(tup, t))


def test_limit_oracle():
    rng = random.Random(17)
    for known in FORMS:
        lp, mp, kind, expected = fo.limit_case(known, rng)
        lim = limit_along_torus(known.form, fo.linear(lp), fo.linear(mp))
        assert lim.kind == kind
        if expected is not None:
            assert lim.form == expected


# -- equivariance ----------------------------------------------------------------


CHANGES = [(1, 1, 0, 1), (0, 1, 1, 0), (2, -1, 1, 3), (1, 0, 5, 1), (3, 2, 1, 1)]


@pytest.mark.parametrize("change", CHANGES)
def test_profile_strata_invariant(change):
    for known in FORMS[:40]:
        a = multiplicity_profile(known.form).strata()
        b = multiplicity_profile(transform(known.form, *change)).strata()
        assert a == b


@given(st.integers(0, 10**6))
@settings(max_examples=60, deadline=None)
def test_case_total_and_invariant(seed):
    rng = random.Random(seed)
    d = rng.choice([2, 3, 4, 4, 6])
    pool = [fo.random_form(rng, d).form for _ in range(3)]
    # reuse a few root patterns so the later cases actually occur
    special = [x * x * y * y, x * x * (x + y) ** 2, y * y * (x + y) ** 2, x**3 * y, BinaryForm.of([0] * 5)]
    if d == 4:
        pool += rng.sample(special, rng.randint(0, 3))
    forms = rng.sample(pool, rng.randint(1, len(pool)))
    case = case_classify(forms)
    assert case in CASES
    change = rng.choice(CHANGES)
    assert case_classify([transform(f, *change) for f in forms]) == case
    flags = orbit_flags(forms)
    assert flags == orbit_flags([transform(f, *change) for f in forms])


def test_singular_change_rejected():
    with pytest.raises(ValueError):
        transform(x * y, 1, 2, 2, 4)


def test_render():
    assert str(x**4 - x * x * y * y * 3) == "x^4 - 3*x^2*y^2"
    assert str(BinaryForm.of([0, 0])) == "0"
