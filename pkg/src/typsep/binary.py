"""Root multiplicities of binary forms over Q, one-parameter-subgroup limits
and the structural case labels used for tuples of forms.

A form of degree d is stored as coefficients c_0..c_d of x^i y^(d-i).  Roots
are linear divisors; the root ``y`` (no finite value of t = x/y) is tracked
separately as ``infinity_mult``.  Everything is decided through exact gcds, so
a root is certified to exist over the algebraic closure without ever being
computed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy

_T = sympy.Symbol("t")

ALL_ZERO = "ALL_ZERO"
TRIPLE_FRAME = "TRIPLE_FRAME"
CASES = ("I", "II", "III", "IV", "V", "VI", TRIPLE_FRAME, ALL_ZERO)


@dataclass(frozen=True)
class BinaryForm:
    degree: int
    coeffs: tuple[Fraction, ...]

    def __post_init__(self):
        if self.degree < 0 or len(self.coeffs) != self.degree + 1:
            raise ValueError("need degree + 1 coefficients")
        object.__setattr__(self, "coeffs", tuple(Fraction(c) for c in self.coeffs))

    @classmethod
    def of(cls, coeffs: Sequence) -> "BinaryForm":
        """From c_0..c_d; strings such as "3/4" are accepted."""
        return cls(len(coeffs) - 1, tuple(Fraction(c) for c in coeffs))

    @classmethod
    def linear(cls, a, b) -> "BinaryForm":
        """The linear form a*x + b*y."""
        return cls(1, (Fraction(b), Fraction(a)))

    @classmethod
    def monomial(cls, i: int, j: int, c=1) -> "BinaryForm":
        """c * x^i * y^j."""
        coeffs = [Fraction(0)] * (i + j + 1)
        coeffs[i] = Fraction(c)
        return cls(i + j, tuple(coeffs))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __add__(self, other: "BinaryForm") -> "BinaryForm":
        if other.degree != self.degree:
            raise ValueError("degree mismatch")
        return BinaryForm(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "BinaryForm":
        return BinaryForm(self.degree, tuple(-c for c in self.coeffs))

    def __sub__(self, other: "BinaryForm") -> "BinaryForm":
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, BinaryForm):
            return BinaryForm(self.degree, tuple(c * Fraction(other) for c in self.coeffs))
        out = [Fraction(0)] * (self.degree + other.degree + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return BinaryForm(self.degree + other.degree, tuple(out))

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "BinaryForm":
        acc = BinaryForm(0, (Fraction(1),))
        for _ in range(e):
            acc = acc * self
        return acc

    def __call__(self, x, y):
        return sum((c * x**i * y ** (self.degree - i) for i, c in enumerate(self.coeffs)), Fraction(0))

    def to_json(self) -> list[str]:
        return [str(c) for c in self.coeffs]

    def __str__(self) -> str:
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            mono = "*".join(
                f"{v}^{k}" if k > 1 else v for v, k in (("x", i), ("y", self.degree - i)) if k
            )
            if not mono:
                terms.append(str(c))
            elif c == 1:
                terms.append(mono)
            elif c == -1:
                terms.append("-" + mono)
            else:
                terms.append(f"{c}*{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def form_tuple(forms: Sequence[BinaryForm]) -> tuple[BinaryForm, ...]:
    forms = tuple(forms)
    if not forms:
        raise ValueError("empty tuple of forms")
    if len({f.degree for f in forms}) != 1:
        raise ValueError("forms in a tuple must share a degree")
    return forms


# -- dehomogenization ------------------------------------------------------------


def _poly(v: BinaryForm) -> sympy.Poly:
    """u(t) = v(t, 1)."""
    return sympy.Poly(
        [sympy.Rational(c.numerator, c.denominator) for c in reversed(v.coeffs)], _T, domain="QQ"
    )


def _infinity_mult(v: BinaryForm) -> int:
    return v.degree - max(i for i, c in enumerate(v.coeffs) if c)


def _homogenize(p: sympy.Poly, degree: int) -> BinaryForm:
    coeffs = [Fraction(0)] * (degree + 1)
    for (k,), c in p.terms():
        coeffs[k] = Fraction(int(c.p), int(c.q))
    return BinaryForm(degree, tuple(coeffs))


def _require_nonzero(v: BinaryForm):
    if v.is_zero():
        raise ValueError("the zero form has no multiplicity profile")


@dataclass(frozen=True)
class MultiplicityProfile:
    """``finite_profile`` lists (e, degree of the squarefree factor whose roots
    have multiplicity exactly e), e increasing."""

    degree: int
    infinity_mult: int
    finite_profile: tuple[tuple[int, int], ...]

    def strata(self) -> tuple[tuple[int, int], ...]:
        """(multiplicity, number of roots) with the root at infinity folded in.

        This is the part that does not depend on the choice of coordinates.
        """
        acc = dict(self.finite_profile)
        if self.infinity_mult:
            acc[self.infinity_mult] = acc.get(self.infinity_mult, 0) + 1
        return tuple(sorted(acc.items()))

    def max_mult(self) -> int:
        return max([self.infinity_mult] + [e for e, _ in self.finite_profile])

    def to_json(self) -> dict:
        return {
            "infinity_mult": self.infinity_mult,
            "finite_profile": [list(p) for p in self.finite_profile],
        }


def _squarefree_strata(u: sympy.Poly) -> list[tuple[int, sympy.Poly]]:
    """Yun's algorithm: [(e, a_e)] with u = c * prod a_e^e, a_e squarefree and coprime."""
    out = []
    if u.degree() <= 0:
        return out
    du = u.diff(_T)
    a = sympy.gcd(u, du)
    b = sympy.quo(u, a)
    c = sympy.quo(du, a)
    d = c - b.diff(_T)
    e = 1
    while b.degree() > 0:
        a = sympy.gcd(b, d)
        if a.degree() > 0:
            out.append((e, a))
        b = sympy.quo(b, a)
        c = sympy.quo(d, a)
        d = c - b.diff(_T)
        e += 1
    return out


def multiplicity_profile(v: BinaryForm) -> MultiplicityProfile:
    _require_nonzero(v)
    strata = _squarefree_strata(_poly(v))
    return MultiplicityProfile(
        v.degree, _infinity_mult(v), tuple((e, a.degree()) for e, a in strata)
    )


def has_root_mult_ge(v: BinaryForm, threshold) -> bool:
    """Some root (infinity included) has multiplicity >= threshold."""
    _require_nonzero(v)
    if Fraction(threshold) <= 0:
        return True
    return multiplicity_profile(v).max_mult() >= Fraction(threshold)


def _high_part(v: BinaryForm, k: int) -> tuple[sympy.Poly, bool]:
    """gcd(u, u', ..., u^(k-1)) and whether y^k divides v."""
    u = _poly(v)
    h, der = u, u
    for _ in range(k - 1):
        der = der.diff(_T)
        h = sympy.gcd(h, der)
    return h, _infinity_mult(v) >= k


def common_root_mult_ge(forms: Sequence[BinaryForm], threshold) -> bool:
    """Some linear form is a root of multiplicity >= threshold of every form.

    Zero forms are divisible by every power of every linear form, so they
    never block a common root and are skipped.
    """
    forms = form_tuple(forms)
    nonzero = [v for v in forms if not v.is_zero()]
    if not nonzero:
        raise ValueError("all forms are zero")
    k = math.ceil(Fraction(threshold))
    if k <= 0:
        return True
    g, at_infinity = None, True
    for v in nonzero:
        h, inf = _high_part(v, k)
        g = h if g is None else sympy.gcd(g, h)
        at_infinity = at_infinity and inf
    return g.degree() >= 1 or at_infinity


def form_gcd(forms: Sequence[BinaryForm]) -> BinaryForm:
    """Monic (in t = x/y) greatest common divisor of non-zero forms."""
    forms = [v for v in forms if not v.is_zero()]
    if not forms:
        raise ValueError("all forms are zero")
    g = None
    for v in forms:
        u = _poly(v)
        g = u if g is None else sympy.gcd(g, u)
    g = g.monic() if g.degree() > 0 else sympy.Poly(1, _T, domain="QQ")
    inf = min(_infinity_mult(v) for v in forms)
    return _homogenize(g, g.degree()) * BinaryForm.monomial(0, inf)


def _exact_quotient(v: BinaryForm, q: BinaryForm):
    """c with v == c * q, or None."""
    lead = max(i for i, c in enumerate(q.coeffs) if c)
    c = v.coeffs[lead] / q.coeffs[lead]
    return c if q * c == v else None


def is_balanced_square(v: BinaryForm):
    """(c, q) with v = c * q^(d/2) and q a squarefree quadratic, else None.

    q is normalized so its highest non-zero coefficient (in powers of x) is 1.
    """
    if v.degree % 2:
        raise ValueError("balanced squares have even degree")
    _require_nonzero(v)
    if v.degree == 0:
        return None
    u = _poly(v)
    radical = sympy.quo(u, sympy.gcd(u, u.diff(_T))) if u.degree() > 0 else u
    inf = _infinity_mult(v)
    if radical.degree() + (inf > 0) != 2:
        return None
    q = _homogenize(radical.monic() if radical.degree() > 0 else radical, 2)
    lead = max(i for i, c in enumerate(q.coeffs) if c)
    q = q * (1 / q.coeffs[lead])
    c = _exact_quotient(v, q ** (v.degree // 2))
    return None if c is None else (c, q)


# -- coordinate changes and limits -----------------------------------------------


def substitute(v: BinaryForm, x_form: BinaryForm, y_form: BinaryForm) -> BinaryForm:
    """v(x_form, y_form) for linear forms x_form, y_form."""
    acc = BinaryForm(v.degree, (Fraction(0),) * (v.degree + 1))
    for i, c in enumerate(v.coeffs):
        if c:
            acc = acc + (x_form**i) * (y_form ** (v.degree - i)) * c
    return acc


def transform(v: BinaryForm, a, b, c, d) -> BinaryForm:
    """Substitute x -> a x + b y, y -> c x + d y (an invertible change)."""
    if Fraction(a) * Fraction(d) - Fraction(b) * Fraction(c) == 0:
        raise ValueError("singular coordinate change")
    return substitute(v, BinaryForm.linear(a, b), BinaryForm.linear(c, d))


@dataclass(frozen=True)
class Limit:
    kind: str  # "NoLimit", "Zero" or "Balanced"
    form: BinaryForm | None = None

    def to_json(self) -> dict:
        out = {"limit": self.kind}
        if self.form is not None:
            out["form"] = self.form.to_json()
        return out


def _linear_coeffs(f: BinaryForm):
    if f.degree != 1:
        raise ValueError("expected a linear form")
    return f.coeffs[1], f.coeffs[0]  # a, b in a*x + b*y


def in_basis(v: BinaryForm, l: BinaryForm, m: BinaryForm) -> list[Fraction]:
    """a_0..a_d with v = sum a_i l^i m^(d-i)."""
    l1, l0 = _linear_coeffs(l)
    m1, m0 = _linear_coeffs(m)
    det = l1 * m0 - l0 * m1
    if det == 0:
        raise ValueError("l and m are dependent")
    # x and y written in the variables (L, M) = (l, m)
    x_form = BinaryForm.linear(m0 / det, -l0 / det)
    y_form = BinaryForm.linear(-m1 / det, l1 / det)
    return list(substitute(v, x_form, y_form).coeffs)


def limit_along_torus(v: BinaryForm, l: BinaryForm, m: BinaryForm) -> Limit:
    """Limit as z -> 0 of the one-parameter subgroup scaling l by z and m by 1/z.

    In the basis l^i m^(d-i) the term a_i is scaled by z^(2i - d), so the
    limit exists iff l^i divides v for every i < d/2.
    """
    a = in_basis(v, l, m)
    d = v.degree
    mult = next((i for i, c in enumerate(a) if c), d + 1)
    if 2 * mult > d:
        return Limit("Zero")
    if 2 * mult == d:
        return Limit("Balanced", (l * m) ** (d // 2) * a[d // 2])
    return Limit("NoLimit")


# -- tuples ----------------------------------------------------------------------


def _rank_at_least_two(forms: Sequence[BinaryForm]) -> bool:
    rows = [f.coeffs for f in forms if not f.is_zero()]
    if not rows:
        return False
    first = rows[0]
    return any(
        first[i] * r[j] != first[j] * r[i]
        for r in rows[1:]
        for i in range(len(first))
        for j in range(i + 1, len(first))
    )


def orbit_flags(forms: Sequence[BinaryForm]) -> dict:
    """One-sided orbit criteria for the tuple under SL(2).

    ``closed_maximal_sufficient`` holds when the components share no root of
    multiplicity >= d/2, which is enough for a closed orbit of maximal
    dimension.  ``maximal_if_closed`` is the weaker statement that a closed
    orbit would be maximal: some non-zero component is not a balanced square,
    or two components are linearly independent.  Neither flag being false
    says anything about the orbit.
    """
    forms = form_tuple(forms)
    d = forms[0].degree
    if d < 1:
        raise ValueError("forms must have positive degree")
    if all(f.is_zero() for f in forms):
        return {"closed_maximal_sufficient": False, "maximal_if_closed": False, "reason": ALL_ZERO}
    common = common_root_mult_ge(forms, Fraction(d, 2))
    not_square = any(
        not f.is_zero() and (d % 2 or is_balanced_square(f) is None) for f in forms
    )
    return {
        "closed_maximal_sufficient": not common,
        "maximal_if_closed": not_square or _rank_at_least_two(forms),
        "reason": "COMMON_HIGH_ROOT" if common else "NO_COMMON_HIGH_ROOT",
    }


def case_classify(forms: Sequence[BinaryForm]) -> str:
    """Label the tuple by the first matching structural case.

    I    some component has no root of multiplicity >= d/2
    II   every component has one, but two components share none
    III  l^(e+1) divides every component for some l, d = 2e or 2e + 1
    IV   some non-zero component is not c * (l1 l2)^(d/2)
    V    components are l^(d/2) l_i^(d/2) with two independent l_i
    VI   components are multiples of one balanced square
    TRIPLE_FRAME  what is left: multiples of (l1 l2)^(d/2), (l1 l3)^(d/2), (l2 l3)^(d/2)
    """
    forms = form_tuple(forms)
    d = forms[0].degree
    if d < 1:
        raise ValueError("forms must have positive degree")
    nonzero = [f for f in forms if not f.is_zero()]
    if not nonzero:
        return ALL_ZERO
    half = Fraction(d, 2)
    if any(not has_root_mult_ge(f, half) for f in nonzero):
        return "I"
    for i, f in enumerate(nonzero):
        for g in nonzero[i + 1 :]:
            if not common_root_mult_ge((f, g), half):
                return "II"
    if common_root_mult_ge(nonzero, d // 2 + 1):
        return "III"
    if d % 2:
        raise AssertionError("odd degree tuples are always covered by cases I-III")
    squares = [is_balanced_square(f) for f in nonzero]
    if any(s is None for s in squares):
        return "IV"
    quads = [q for _, q in squares]
    if all(q == quads[0] for q in quads):
        return "VI"
    if form_gcd(quads).degree >= 1:
        return "V"
    return TRIPLE_FRAME


def classify_report(forms: Sequence[BinaryForm]) -> dict:
    forms = form_tuple(forms)
    return {
        "case": case_classify(forms),
        "flags": orbit_flags(forms),
        "profile": [None if f.is_zero() else multiplicity_profile(f).to_json() for f in forms],
    }
