"""Semi-algebraic relations: formulas, membership, sign vectors and the
degree-based sign-pattern bound."""

from __future__ import annotations

from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from semiramsey import (
    ArgumentError,
    Formula,
    MultivariatePolynomial as Poly,
    OrderedPointSet,
    SemiAlgebraicRelation,
    base_construction,
    count_distinct_sign_vectors,
    eval_membership,
    milnor_thom_bound,
    order_type_relation,
    sign_vector,
)


def x(i: int, n: int) -> Poly:
    return Poly.variable(i, n)


# -- construction validation ---------------------------------------------------


def test_atom_with_dangling_polynomial_index_rejected():
    poly = x(0, 2)
    with pytest.raises(ArgumentError):
        SemiAlgebraicRelation(2, 1, [poly], Formula.leaf(1, "ge"))


def test_unknown_comparison_rejected():
    with pytest.raises(ArgumentError):
        Formula.leaf(0, "le")


def test_polynomial_variable_count_must_match_arity_times_dim():
    with pytest.raises(ArgumentError):
        SemiAlgebraicRelation(2, 2, [x(0, 3)], Formula.leaf(0, "ge"))


def test_complexity_of_base_relation():
    relation = base_construction(2).relation
    assert relation.complexity() == 3


def test_complexity_dominated_by_degree():
    p = x(0, 2) ** 5
    relation = SemiAlgebraicRelation(2, 1, [p], Formula.leaf(0, "gt"))
    assert relation.complexity() == 5


# -- membership ----------------------------------------------------------------


def test_base_relation_memberships_on_first_four_integers():
    inst = base_construction(2)
    assert eval_membership(inst.relation, inst.points, (1, 2, 3))
    assert not eval_membership(inst.relation, inst.points, (1, 3, 4))


def test_orientation_relation_on_unit_triangle():
    points = OrderedPointSet(2, [[0, 0], [1, 0], [0, 1]])
    assert eval_membership(order_type_relation(2), points, (1, 2, 3))


def test_non_increasing_indices_rejected():
    inst = base_construction(2)
    with pytest.raises(ArgumentError):
        eval_membership(inst.relation, inst.points, (2, 1, 3))
    with pytest.raises(ArgumentError):
        eval_membership(inst.relation, inst.points, (1, 1, 2))


def test_out_of_range_index_rejected():
    inst = base_construction(2)
    with pytest.raises(ArgumentError):
        eval_membership(inst.relation, inst.points, (1, 2, 5))


def test_dimension_mismatch_rejected():
    points = OrderedPointSet(2, [[0, 0], [1, 0], [0, 1]])
    inst = base_construction(2)
    with pytest.raises(ArgumentError):
        eval_membership(inst.relation, points, (1, 2, 3))


def test_membership_ignores_points_outside_the_tuple():
    relation = base_construction(2).relation
    small = OrderedPointSet(1, [[1], [2], [3]])
    grown = OrderedPointSet(1, [[1], [2], [3], [100], [-7]])
    assert (eval_membership(relation, small, (1, 2, 3))
            == eval_membership(relation, grown, (1, 2, 3)))


def test_empty_and_is_true_empty_or_is_false():
    points = OrderedPointSet(1, [[1], [2]])
    always = SemiAlgebraicRelation(2, 1, [], Formula.all_of([]))
    never = SemiAlgebraicRelation(2, 1, [], Formula.any_of([]))
    assert eval_membership(always, points, (1, 2))
    assert not eval_membership(never, points, (1, 2))


# -- sign vectors ----------------------------------------------------------------


def test_sign_vector_basic():
    family = [x(0, 1), x(0, 1) - Poly.constant(1, 1)]
    assert sign_vector(family, [F(1, 2)]) == (1, -1)


def test_sign_vector_zero_entries():
    family = [x(0, 1) ** 2, -(x(0, 1) ** 2)]
    assert sign_vector(family, [0]) == (0, 0)


def test_sign_vector_cancellation():
    family = [x(0, 2) + x(1, 2)]
    assert sign_vector(family, [1, -1]) == (0,)


def test_sign_vector_dimension_mismatch():
    with pytest.raises(ArgumentError):
        sign_vector([x(0, 2)], [1])


def test_count_distinct_sign_vectors_examples():
    assert count_distinct_sign_vectors([x(0, 1)], [[-1], [0], [2]]) == 3
    one = x(0, 1) ** 2 + Poly.constant(1, 1)
    assert count_distinct_sign_vectors([one], [[-5], [0], [7]]) == 1
    quadrants = [[1, 1], [-1, 1], [-1, -1], [1, -1]]
    assert count_distinct_sign_vectors([x(0, 2), x(1, 2)], quadrants) == 4


# -- sign-pattern bound ----------------------------------------------------------


def test_milnor_thom_frozen_values():
    assert milnor_thom_bound(1, 2, 2) == 2500
    assert milnor_thom_bound(2, 4, 2) == 40000
    for d in (2, 3, 4):
        assert milnor_thom_bound(1, d, d) == 50 ** d


def test_milnor_thom_ceiling_applied_before_exponentiation():
    # 50*1*3/2 = 75 exactly; 50*1*5/3 rounds 250/3 up to 84.
    assert milnor_thom_bound(1, 3, 2) == 75 ** 2
    assert milnor_thom_bound(1, 5, 3) == 84 ** 3


def test_milnor_thom_hypotheses_enforced():
    with pytest.raises(ArgumentError):
        milnor_thom_bound(1, 1, 2)  # family smaller than dimension
    with pytest.raises(ArgumentError):
        milnor_thom_bound(1, 3, 1)  # dimension below two
    with pytest.raises(ArgumentError):
        milnor_thom_bound(0, 3, 2)  # degree below one


# -- formula algebra -------------------------------------------------------------

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4).map(F)


@st.composite
def formulas(draw, n_polys: int):
    leaves = st.builds(
        Formula.leaf,
        st.integers(0, n_polys - 1),
        st.sampled_from(["ge", "gt", "eq"]),
    )

    def extend(children):
        return st.one_of(
            st.builds(lambda c: Formula.all_of(list(c)),
                      st.lists(children, max_size=3)),
            st.builds(lambda c: Formula.any_of(list(c)),
                      st.lists(children, max_size=3)),
            st.builds(Formula.negation, children),
        )

    return draw(st.recursive(leaves, extend, max_leaves=8))


@given(formulas(n_polys=2), st.lists(rationals, min_size=2, max_size=2))
@settings(max_examples=120, deadline=None)
def test_double_negation_preserves_membership(formula, coords):
    polys = [x(0, 2) - x(1, 2), x(0, 2) * x(1, 2) - Poly.constant(2, 1)]
    relation = SemiAlgebraicRelation(2, 1, polys, formula)
    doubled = SemiAlgebraicRelation(
        2, 1, polys, Formula.negation(Formula.negation(formula)))
    points = OrderedPointSet(1, [[c] for c in coords])
    assert (eval_membership(relation, points, (1, 2))
            == eval_membership(doubled, points, (1, 2)))


@given(st.lists(rationals, min_size=4, max_size=4))
@settings(max_examples=60, deadline=None)
def test_de_morgan_on_random_points(coords):
    polys = [x(0, 2) - x(1, 2), x(0, 2) + x(1, 2)]
    a, b = Formula.leaf(0, "ge"), Formula.leaf(1, "gt")
    lhs = Formula.negation(Formula.all_of([a, b]))
    rhs = Formula.any_of([Formula.negation(a), Formula.negation(b)])
    points = OrderedPointSet(2, [coords[:2], coords[2:]])
    rel_l = SemiAlgebraicRelation(1, 2, polys, lhs)
    rel_r = SemiAlgebraicRelation(1, 2, polys, rhs)
    assert (eval_membership(rel_l, points, (1,))
            == eval_membership(rel_r, points, (2,))
            or coords[:2] != coords[2:])
    assert (eval_membership(rel_l, points, (1,))
            == eval_membership(rel_r, points, (1,)))


@given(st.lists(st.lists(rationals, min_size=2, max_size=2),
                min_size=3, max_size=12))
@settings(max_examples=60, deadline=None)
def test_sign_vector_count_respects_bound_on_small_family(rows):
    family = [x(0, 2) - x(1, 2),
              x(0, 2) * x(1, 2) - Poly.constant(2, 1),
              x(0, 2) + x(1, 2) ** 2]
    got = count_distinct_sign_vectors(family, rows)
    assert got <= milnor_thom_bound(2, len(family), 2)
