from fractions import Fraction

from hypothesis import given, settings, strategies as st

from qcylab.graded.algebra import GradedForm, GradedPoly, layout, power

LAY = layout(1)
SIZE = LAY.size


@st.composite
def polys(draw, max_terms=3, max_exp=2):
    terms = {}
    for _ in range(draw(st.integers(0, max_terms))):
        e = tuple(draw(st.integers(0, max_exp)) if draw(st.booleans()) else 0 for _ in range(SIZE))
        terms[e] = Fraction(draw(st.integers(-4, 4)), draw(st.integers(1, 3)))
    return GradedPoly(LAY, terms)


@st.composite
def forms(draw, degree):
    comps = {}
    for _ in range(draw(st.integers(0, 2))):
        blade = tuple(sorted(draw(st.lists(st.integers(0, SIZE - 1), min_size=degree, max_size=degree,
                                           unique=True))))
        comps[blade] = draw(polys())
    return GradedForm(LAY, comps)


points = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=4), min_size=SIZE, max_size=SIZE)


@given(polys(), polys(), points)
def test_product_evaluates_pointwise(p, q, pt):
    assert p.mul(q).evaluate(pt) == p.evaluate(pt) * q.evaluate(pt)


@given(polys())
def test_euler_operator_scales_homogeneous_parts(p):
    for w in p.weights():
        part = p.homogeneous_part(w)
        assert part.euler() == part.scale(w)


@given(polys(), polys(), st.integers(0, SIZE - 1))
def test_leibniz_rule(p, q, k):
    assert p.mul(q).derivative(k) == p.derivative(k).mul(q) + p.mul(q.derivative(k))


@settings(deadline=None)
@given(forms(1))
def test_exterior_derivative_squares_to_zero(f):
    assert f.d().d().is_zero()


@settings(deadline=None)
@given(forms(1), forms(2))
def test_graded_commutativity(a, b):
    assert a.wedge(b) == b.wedge(a)
    assert a.wedge(a).is_zero()


@settings(deadline=None)
@given(forms(1), forms(1))
def test_d_is_an_antiderivation(a, b):
    assert a.wedge(b).d() == a.d().wedge(b) - a.wedge(b.d())


@settings(deadline=None)
@given(forms(1), forms(1), forms(1))
def test_wedge_associative(a, b, c):
    assert a.wedge(b).wedge(c) == a.wedge(b.wedge(c))


@settings(deadline=None)
@given(forms(2))
def test_cartan_formula_matches_weight_on_homogeneous_parts(f):
    for w in f.weights():
        part = f.homogeneous_part(w)
        assert part.lie_euler() == part.scale(w)


@given(forms(1), st.integers(6, 10))
def test_truncated_wedge_drops_only_high_weights(f, cap):
    g = GradedForm.basis(LAY, LAY.t(0))
    assert f.wedge(g, cap) == f.wedge(g).truncate(cap)


def test_power_of_symplectic_form():
    # (dx0 dx1 + dx2 dx3)^2 = 2 dx0 dx1 dx2 dx3
    one = GradedPoly.const(LAY, 1)
    w = GradedForm(LAY, {(0, 1): one, (2, 3): one})
    assert power(w, 2) == GradedForm(LAY, {(0, 1, 2, 3): GradedPoly.const(LAY, 2)})
