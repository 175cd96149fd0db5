"""Homogeneous-subset solvers, monotone subsequences, transitive colorings,
random deletion, and the freeness predicates."""

from __future__ import annotations

import itertools
import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from semiramsey import (
    ArgumentError,
    BudgetExhaustedError,
    Formula,
    Hypergraph3,
    MultivariatePolynomial as Poly,
    OrderedPointSet,
    PreconditionError,
    SemiAlgebraicRelation,
    TransitiveColoring,
    base_construction,
    erdos_rado_greedy,
    eval_membership,
    find_bad_triples,
    homogeneous_check,
    is_K4e_free,
    is_Ks3_free,
    longest_monotone_subsequence,
    max_homogeneous,
    milnor_thom_bound,
    spencer_independent_set,
    step_up,
    transitive_ramsey_number,
    verify_transitive_ramsey,
)
from semiramsey.solvers import greedy_class_bound_check


def x(i: int, n: int) -> Poly:
    return Poly.variable(i, n)


def never_relation(arity: int) -> SemiAlgebraicRelation:
    return SemiAlgebraicRelation(arity, 1, [], Formula.any_of([]))


def always_relation(arity: int) -> SemiAlgebraicRelation:
    return SemiAlgebraicRelation(arity, 1, [], Formula.all_of([]))


def integer_points(*values) -> OrderedPointSet:
    return OrderedPointSet(1, [[v] for v in values])


# -- exact maximum search ---------------------------------------------------------


def test_base_two_has_an_all_in_triangle():
    inst = base_construction(2)
    result = max_homogeneous(inst.points, inst.relation)
    assert len(result.subset) == 3
    assert result.polarity == "in"
    assert result.certified and result.stats["maximum"]


def test_never_true_relation_makes_everything_out_homogeneous():
    points = integer_points(3, 5, 8, 9, 12)
    result = max_homogeneous(points, never_relation(3))
    assert result.subset == (1, 2, 3, 4, 5)
    assert result.polarity == "out"


def test_always_true_relation_makes_everything_in_homogeneous():
    points = integer_points(3, 5, 8)
    result = max_homogeneous(points, always_relation(2))
    assert result.subset == (1, 2, 3) and result.polarity == "in"


def test_budget_exhaustion_degrades_to_uncertified_maximum():
    inst = base_construction(3)
    result = max_homogeneous(inst.points, inst.relation, budget=3)
    assert not result.stats["maximum"]
    assert result.certified  # the subset itself is still re-checked
    assert len(result.subset) >= 1


def _naive_max_homogeneous(points, relation) -> int:
    n = len(points)
    k = relation.arity
    best = 0
    for size in range(n, 0, -1):
        if size <= best:
            break
        for subset in itertools.combinations(range(1, n + 1), size):
            polarity, _ = homogeneous_check(points, relation, subset)
            if polarity is not None:
                best = size
                break
    return best


def test_branch_and_bound_matches_naive_search_on_random_instances():
    from semiramsey import SeededRng

    rng = SeededRng(99)
    for trial in range(25):
        t_rng = rng.derive(f"instance-{trial}")
        n = t_rng.randint(4, 7)
        arity = t_rng.randint(2, 3)
        values = sorted(t_rng.sample(list(range(-20, 21)), n))
        points = integer_points(*values)
        nv = arity
        polys = [
            sum((x(i, nv) * t_rng.randint(-2, 2) for i in range(nv)),
                Poly.constant(nv, t_rng.randint(-4, 4)))
            for _ in range(2)
        ]
        polys = [p if not p.is_zero() else Poly.constant(nv, 1) for p in polys]
        formula = Formula.any_of([
            Formula.leaf(0, "ge"),
            Formula.all_of([Formula.leaf(1, "gt")]),
        ])
        relation = SemiAlgebraicRelation(arity, 1, polys, formula)
        result = max_homogeneous(points, relation)
        assert result.stats["maximum"]
        assert len(result.subset) == _naive_max_homogeneous(points, relation)


def test_homogeneous_check_detects_mixed_subsets():
    inst = base_construction(2)
    assert homogeneous_check(inst.points, inst.relation, [1, 2, 3]) == ("in", None)
    polarity, witness = homogeneous_check(inst.points, inst.relation,
                                          [1, 2, 3, 4])
    assert polarity is None and witness is not None


# -- greedy extraction --------------------------------------------------------------


def test_greedy_output_is_certified_on_the_base_instance():
    inst = base_construction(3)
    result = erdos_rado_greedy(inst.points, inst.relation)
    assert result.certified
    assert len(result.subset) >= 3
    assert result.stats["method"] == "greedy"


def test_greedy_on_never_true_relation_keeps_everything():
    points = integer_points(*range(1, 9))
    result = erdos_rado_greedy(points, never_relation(3))
    assert result.polarity == "out"
    assert len(result.subset) == 8


def test_greedy_certifies_on_the_stepped_up_instance():
    stepped = step_up(base_construction(2))
    result = erdos_rado_greedy(stepped.points, stepped.relation)
    assert result.certified
    assert len(result.subset) >= 3


def test_greedy_depth_grows_with_the_base_height():
    inst = base_construction(4)
    result = erdos_rado_greedy(inst.points, inst.relation)
    assert result.certified
    assert len(result.subset) >= 3
    levels = result.stats["classes_per_level"]
    assert levels and levels[0][0] == (1, 1)


def test_greedy_class_counts_respect_the_sign_pattern_bound():
    inst = base_construction(4)
    result = erdos_rado_greedy(inst.points, inst.relation)
    for step, classes in result.stats["classes_per_level"][0]:
        verdict = greedy_class_bound_check(inst.relation, classes, step)
        assert verdict is None or verdict


def test_greedy_rejects_binary_relations():
    with pytest.raises(ArgumentError):
        erdos_rado_greedy(integer_points(1, 2, 3), always_relation(2))


# -- monotone subsequences ------------------------------------------------------------


def test_monotone_example_mixed():
    assert len(longest_monotone_subsequence([1, 3, 2, 4])) == 3


def test_monotone_example_decreasing():
    assert longest_monotone_subsequence([5, 4, 3, 2, 1]) == [5, 4, 3, 2, 1]


def test_monotone_extremal_square():
    assert len(longest_monotone_subsequence([2, 1, 4, 3])) == 2


def test_monotone_rejects_duplicates():
    with pytest.raises(ArgumentError):
        longest_monotone_subsequence([1, 2, 1])


def test_monotone_accepts_fractions():
    seq = [F(1, 2), F(1, 3), F(2, 3), F(1, 6)]
    out = longest_monotone_subsequence(seq)
    assert len(out) == 3  # 1/2 > 1/3 > 1/6


@given(st.permutations(list(range(1, 17))))
@settings(max_examples=120, deadline=None)
def test_monotone_meets_square_root_floor(perm):
    out = longest_monotone_subsequence(perm)
    assert len(out) >= math.isqrt(len(perm) - 1) + 1
    increasing = all(a < b for a, b in zip(out, out[1:]))
    decreasing = all(a > b for a, b in zip(out, out[1:]))
    assert increasing or decreasing
    positions = [perm.index(v) for v in out]
    assert positions == sorted(positions)


# -- transitive colorings ---------------------------------------------------------------


def test_threshold_formula_values():
    assert transitive_ramsey_number(3, 3) == 3
    assert transitive_ramsey_number(4, 4) == 7
    for s in range(3, 8):
        assert transitive_ramsey_number(s, 3) == s


def test_threshold_formula_rejects_small_cliques():
    with pytest.raises(ArgumentError):
        transitive_ramsey_number(2, 3)
    with pytest.raises(ArgumentError):
        transitive_ramsey_number(3, 2)


def test_verification_at_and_below_threshold():
    assert verify_transitive_ramsey(3, 3, 3) == (True, None)
    holds, witness = verify_transitive_ramsey(3, 3, 2)
    assert not holds and witness.n == 2

    assert verify_transitive_ramsey(4, 3, 4)[0]
    holds, witness = verify_transitive_ramsey(4, 3, 3)
    assert not holds
    assert witness.is_transitive()
    assert witness.monochromatic_subset(4, "red") is None
    assert witness.monochromatic_subset(3, "blue") is None


def test_verification_budget_exhaustion():
    with pytest.raises(BudgetExhaustedError):
        verify_transitive_ramsey(4, 4, 7, budget=10)


def test_transitive_coloring_predicate():
    triples = list(itertools.combinations(range(1, 5), 3))
    all_red = TransitiveColoring(4, {t: "red" for t in triples})
    assert all_red.is_transitive()
    assert all_red.monochromatic_subset(4, "red") == (1, 2, 3, 4)

    broken = dict.fromkeys(triples, "red")
    broken[(1, 2, 4)] = "blue"  # (1,2,3) and (2,3,4) red force (1,2,4) red
    assert not TransitiveColoring(4, broken).is_transitive()


# -- random deletion ---------------------------------------------------------------------


def test_deletion_on_two_disjoint_edges():
    graph = Hypergraph3.make(6, [(1, 2, 3), (4, 5, 6)])
    vertices, stats = spencer_independent_set(graph, seed=11)
    assert graph.is_independent(vertices)
    assert len(vertices) >= 4


def test_deletion_on_the_complete_triple_system():
    edges = list(itertools.combinations(range(1, 7), 3))
    graph = Hypergraph3.make(6, edges)
    vertices, _ = spencer_independent_set(graph, seed=5)
    assert graph.is_independent(vertices)
    assert len(vertices) >= 2


def test_deletion_on_a_single_edge():
    graph = Hypergraph3.make(3, [(1, 2, 3)])
    vertices, _ = spencer_independent_set(graph, seed=0)
    assert graph.is_independent(vertices)
    assert len(vertices) >= 2


def test_deletion_requires_enough_edges():
    graph = Hypergraph3.make(6, [(1, 2, 3)])
    with pytest.raises(PreconditionError):
        spencer_independent_set(graph)


def test_hypergraph_validation():
    with pytest.raises(ArgumentError):
        Hypergraph3.make(4, [(1, 2, 5)])
    with pytest.raises(ArgumentError):
        Hypergraph3.make(4, [(1, 1, 2)])
    normalized = Hypergraph3.make(4, [(2, 1, 3)])
    assert (1, 2, 3) in normalized.edges


# -- freeness predicates -------------------------------------------------------------------


def test_ks3_freeness_of_empty_relation():
    points = integer_points(1, 2, 3, 4)
    assert is_Ks3_free(points, never_relation(3), 3) == (True, None)


def test_base_relation_contains_an_in_triangle():
    inst = base_construction(2)
    free, witness = is_Ks3_free(inst.points, inst.relation, 3)
    assert not free and witness == (1, 2, 3)


def test_base_relation_is_k43_free():
    inst = base_construction(2)
    assert is_Ks3_free(inst.points, inst.relation, 4) == (True, None)


def test_k4e_freeness():
    points = integer_points(1, 2, 3, 4, 5)
    assert is_K4e_free(points, never_relation(3)) == (True, None)
    free, witness = is_K4e_free(points, always_relation(3))
    assert not free and witness == (1, 2, 3, 4)


def test_base_relation_is_not_k4e_free():
    inst = base_construction(2)
    free, witness = is_K4e_free(inst.points, inst.relation)
    assert not free and witness == (1, 2, 3, 4)


# -- bad triples ------------------------------------------------------------------------------


def test_base_relation_has_no_bad_triples_on_small_points():
    points = integer_points(1, 2, 3)
    bad, skipped = find_bad_triples(points, base_construction(2).relation)
    assert bad == []
    assert skipped == []


def test_root_at_a_point_is_a_bad_triple():
    nv = 3
    relation = SemiAlgebraicRelation(
        3, 1, [x(1, nv) - Poly.constant(nv, 2)], Formula.leaf(0, "ge"))
    bad, _ = find_bad_triples(integer_points(1, 2, 3), relation)
    assert (1, 2, 3) in bad


def test_constant_atoms_yield_no_bad_triples():
    relation = SemiAlgebraicRelation(
        3, 1, [Poly.constant(3, 5)], Formula.leaf(0, "ge"))
    bad, skipped = find_bad_triples(integer_points(1, 2, 3), relation)
    assert bad == [] and skipped == []


def test_identically_zero_restrictions_are_flagged_not_counted():
    nv = 3
    vanishing = (x(0, nv) - Poly.constant(nv, 1)) * (x(1, nv) - Poly.constant(nv, 2))
    relation = SemiAlgebraicRelation(3, 1, [vanishing], Formula.leaf(0, "ge"))
    bad, skipped = find_bad_triples(integer_points(1, 2, 3), relation)
    assert skipped  # fixing x1 = 1 or x2 = 2 kills the product entirely
    for entry in skipped:
        assert len(entry) == 4


def test_bad_triples_need_one_dimensional_points():
    square = OrderedPointSet(2, [[0, 0], [1, 0], [0, 1]])
    with pytest.raises(ArgumentError):
        find_bad_triples(square, SemiAlgebraicRelation(
            3, 2, [], Formula.all_of([])))
