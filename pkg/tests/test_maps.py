"""Map layer: composition, Jacobians, taxonomy, factor chains."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from tamekit.errors import ArityMismatch, EmptySequence, WrongShape
from tamekit.maps import (
    ElementaryDetail,
    FactorChain,
    MapClass,
    PolynomialMap,
    affine_parts,
    classify_map,
    compose,
    compose_chain,
    constant_jacobian,
    elementary_detail,
    identity_map,
    jacobian_det,
    map_from_matrix,
    matrix_det,
    matrix_inverse,
    matrix_product,
    perm_map,
    plane_swap,
    verify_inverse_pair,
)
from tamekit.poly import Polynomial

x, y = Polynomial.variables(2)
X, Y, Z = Polynomial.variables(3)


def test_compose_order():
    f = PolynomialMap((x + y**2, y))
    g = PolynomialMap((2 * x, y))
    assert compose(f, g) == PolynomialMap((2 * x + y**2, y))
    assert compose(g, f) == PolynomialMap((2 * x + 2 * y**2, y))


def test_compose_chain_left_fold():
    f = PolynomialMap((x + y, y))
    g = PolynomialMap((x, y + 1))
    h = PolynomialMap((2 * x, y))
    assert compose_chain((f, g, h)) == compose(compose(f, g), h)
    with pytest.raises(EmptySequence):
        compose_chain(())


def test_self_inverse_plane_map():
    f = PolynomialMap((y**2 - x, y))
    assert verify_inverse_pair(f, f)


def test_jacobian_det_plane():
    f = PolynomialMap((x + y**2, y + x**2))
    assert jacobian_det(f) == 1 - 4 * x * y
    assert constant_jacobian(f) is None
    g = PolynomialMap((x + y**2, y))
    assert constant_jacobian(g) == 1


def test_nagata_is_an_inverse_pair():
    w = X**2 - Y * Z
    sigma = PolynomialMap((X + w * Z, Y + 2 * w * X + w**2 * Z, Z))
    inv = PolynomialMap((X - w * Z, Y - 2 * w * X + w**2 * Z, Z))
    assert verify_inverse_pair(sigma, inv)
    assert constant_jacobian(sigma) == 1


def test_perm_map_orientation():
    m = perm_map((1, 2, 0))
    assert m.coords == (Y, Z, X)
    assert plane_swap() == PolynomialMap((y, x))


def test_apply_pulls_back():
    sigma = PolynomialMap((X + (X**2 - Y * Z) * Z, Y + 2 * (X**2 - Y * Z) * X + (X**2 - Y * Z) ** 2 * Z, Z))
    w = X**2 - Y * Z
    assert sigma.apply(w) == w


def test_classification_priority():
    assert classify_map(identity_map(2)) is MapClass.IDENTITY
    assert classify_map(plane_swap()) is MapClass.LINEAR
    assert classify_map(PolynomialMap((2 * x + 1, y))) is MapClass.AFFINE
    assert classify_map(PolynomialMap((x + y**3, y))) is MapClass.ELEMENTARY
    assert classify_map(PolynomialMap((2 * x + y**2, 3 * y + 1))) is MapClass.TRIANGULAR
    assert classify_map(PolynomialMap((x + y**2, y + x**2))) is MapClass.GENERAL


def test_elementary_detail_fields():
    d = elementary_detail(PolynomialMap((x, 5 * y + x**3 - 2)))
    assert d.index == 1
    assert d.scale == 5
    assert d.addend == x**3 - 2
    assert elementary_detail(PolynomialMap((x + y**2, y + x**2))) is None
    # a coordinate mixing its own variable into the addend is not elementary
    assert elementary_detail(PolynomialMap((x + x * y, y))) is None


def test_elementary_wide_sense_includes_scaled_axis():
    d = elementary_detail(PolynomialMap((X, Y, 3 * Z + X * Y)))
    assert d.index == 2 and d.scale == 3 and d.addend == X * Y


def test_matrix_helpers():
    m = [[1, 2], [3, 5]]
    assert matrix_det(m) == -1
    inv = matrix_inverse(m)
    assert matrix_product(m, inv) == [[1, 0], [0, 1]]
    three = [[2, 0, 1], [0, 1, 0], [1, 0, 1]]
    assert matrix_det(three) == 1
    assert matrix_product(three, matrix_inverse(three)) == [
        [1, 0, 0],
        [0, 1, 0],
        [0, 0, 1],
    ]
    with pytest.raises(WrongShape):
        matrix_inverse([[1, 2], [2, 4]])


def test_affine_round_trip():
    mat = [[0, 1, 0], [1, 0, 0], [0, 0, 2]]
    consts = (1, 0, -3)
    m = map_from_matrix(mat, consts)
    back_mat, back_consts = affine_parts(m)
    assert back_mat == mat
    assert tuple(back_consts) == consts
    with pytest.raises(WrongShape):
        affine_parts(PolynomialMap((x + y**2, y)))


def test_factor_chain_invariant():
    target = PolynomialMap((2 * x + y**2, y))
    chain = FactorChain(target, (PolynomialMap((2 * x, y)), PolynomialMap((x + Fraction(1, 2) * y**2, y))))
    assert chain.composed() == target
    assert chain.classes() == (MapClass.LINEAR, MapClass.ELEMENTARY)
    with pytest.raises(WrongShape):
        FactorChain(target, (PolynomialMap((2 * x, y)),))


def test_factor_chain_empty_means_identity():
    chain = FactorChain(identity_map(2), ())
    assert chain.composed() == identity_map(2)
    assert len(chain) == 0


def test_arity_guard():
    with pytest.raises(ArityMismatch):
        compose(identity_map(2), identity_map(3))


# ---------------------------------------------------------------------------
# property tests

coeffs = st.integers(min_value=-4, max_value=4)


def small_polys(arity):
    exps = st.tuples(*[st.integers(min_value=0, max_value=2)] * arity)
    return st.dictionaries(exps, coeffs, max_size=3).map(
        lambda d: Polynomial(arity, d)
    )


def small_maps(arity):
    return st.tuples(*[small_polys(arity)] * arity).map(PolynomialMap)


@settings(max_examples=30, deadline=None)
@given(small_maps(2), small_maps(2), small_maps(2))
def test_compose_is_associative(f, g, h):
    assert compose(compose(f, g), h) == compose(f, compose(g, h))


@settings(max_examples=30, deadline=None)
@given(small_maps(2))
def test_identity_is_neutral(f):
    ident = identity_map(2)
    assert compose(f, ident) == f
    assert compose(ident, f) == f


@settings(max_examples=25, deadline=None)
@given(small_maps(2), small_maps(2))
def test_jacobian_chain_rule(f, g):
    lhs = jacobian_det(compose(f, g))
    rhs = jacobian_det(f).substitute(g.coords) * jacobian_det(g)
    assert lhs == rhs
