from __future__ import annotations

import pytest

from oracles import brute_inverse_closed_transversal_exists
from perfcode import construct
from perfcode.codes import (
    Criterion,
    connection_set,
    connection_set_from_transversal,
    decide,
    double_coset_condition,
    find_inverse_closed_transversal,
    is_perfect_code_in_cayley_graph,
    omega_coset_sets,
    omega_criterion,
    search_connection_set,
    square_coset_condition,
    sylow_reduction,
    Transversal,
    verdict_to_json,
)
from perfcode.group import closure, conjugate_subgroup, full_subgroup, trivial_subgroup
from perfcode.subgroups import all_subgroups, normalizer


def test_connection_set_rejects_identity(d8):
    with pytest.raises(ValueError, match="identity"):
        connection_set(d8, {0, 4})


def test_connection_set_rejects_non_inverse_closed(d8):
    # index 1 is the order-4 rotation; its inverse (index 3) is missing
    with pytest.raises(ValueError, match="inverse"):
        connection_set(d8, {1, 4})


def test_complete_graph_singleton_code(d8):
    S = connection_set(d8, set(range(1, 8)))
    assert is_perfect_code_in_cayley_graph(d8, S, {0})


def test_empty_graph_full_code(d8):
    S = connection_set(d8, set())
    assert is_perfect_code_in_cayley_graph(d8, S, set(d8.elements()))


def test_d8_center_is_never_a_code(d8):
    # exhaustive over all inverse-closed connection sets of D8
    assert search_connection_set(d8, closure(d8, [2])) is None


def test_graph_check_rejects_dependent_code(d8):
    S = connection_set(d8, {2})
    assert not is_perfect_code_in_cayley_graph(d8, S, {0, 2})


def test_search_connection_set_order_cap(g21):
    with pytest.raises(ValueError):
        search_connection_set(g21, trivial_subgroup())


def test_transversal_of_whole_group(d8):
    T = find_inverse_closed_transversal(d8, full_subgroup(d8))
    assert T is not None
    assert T.representatives == (0,)


def test_transversal_of_trivial_subgroup(d8):
    T = find_inverse_closed_transversal(d8, trivial_subgroup())
    assert T is not None
    assert T.as_set() == frozenset(d8.elements())


def test_no_transversal_for_d8_center(d8):
    assert find_inverse_closed_transversal(d8, closure(d8, [2])) is None


def test_transversal_for_transposition_subgroup(s4, s4_elem):
    H = closure(s4, [s4_elem[(1, 0, 2, 3)]])
    T = find_inverse_closed_transversal(s4, H)
    assert T is not None
    assert len(T) == 12
    reps = T.as_set()
    assert reps == frozenset(s4.inv(g) for g in reps)
    S = connection_set_from_transversal(s4, H, T)
    assert is_perfect_code_in_cayley_graph(s4, S, H)


def test_transversal_search_matches_brute_oracle():
    for G in (
        construct.dihedral(8),
        construct.quaternion8(),
        construct.cyclic(8),
        construct.cyclic(12),
        construct.dihedral(16),
        construct.dicyclic(16),
    ):
        for H in all_subgroups(G):
            fast = find_inverse_closed_transversal(G, H) is not None
            assert fast == brute_inverse_closed_transversal_exists(G, H), (
                G.name,
                H.indices(),
            )


def test_connection_set_from_transversal_roundtrip_a4(s4, s4_elem):
    A = closure(s4, [s4_elem[(1, 2, 0, 3)], s4_elem[(0, 2, 3, 1)]])
    T = Transversal(representatives=(0, s4_elem[(1, 0, 2, 3)]), inverse_closed=True)
    S = connection_set_from_transversal(s4, A, T)
    assert S.elements == frozenset({s4_elem[(1, 0, 2, 3)]})
    assert is_perfect_code_in_cayley_graph(s4, S, A)


def test_connection_set_from_transversal_requires_identity(s4, s4_elem):
    A = closure(s4, [s4_elem[(1, 2, 0, 3)], s4_elem[(0, 2, 3, 1)]])
    bad = Transversal(
        representatives=(s4_elem[(1, 0, 2, 3)], s4_elem[(0, 1, 3, 2)]),
        inverse_closed=True,
    )
    with pytest.raises(ValueError, match="identity"):
        connection_set_from_transversal(s4, A, bad)


def test_connection_set_from_transversal_requires_inverse_closed(s4, s4_elem):
    H = closure(s4, [s4_elem[(1, 0, 2, 3)], s4_elem[(0, 1, 3, 2)]])  # order 4
    four_cycle = s4_elem[(1, 2, 3, 0)]
    # identity plus one 4-cycle is not inverse-closed
    bad = Transversal(representatives=(0, four_cycle), inverse_closed=False)
    with pytest.raises(ValueError):
        connection_set_from_transversal(s4, H, bad)


def test_square_coset_whole_group(d8):
    assert square_coset_condition(d8, full_subgroup(d8)).is_perfect_code


def test_square_coset_d8_center(d8):
    verdict = square_coset_condition(d8, closure(d8, [2]))
    assert not verdict.is_perfect_code
    assert verdict.counterexample == 1  # the order-4 rotation
    assert verdict.criterion is Criterion.SQUARE_COSET


def test_square_coset_transposition_subgroup(s4, s4_elem):
    H = closure(s4, [s4_elem[(1, 0, 2, 3)]])
    assert square_coset_condition(s4, H).is_perfect_code


def test_double_coset_whole_group(d8):
    assert double_coset_condition(d8, full_subgroup(d8)).is_perfect_code


def test_double_coset_d8_center(d8):
    verdict = double_coset_condition(d8, closure(d8, [2]))
    assert not verdict.is_perfect_code
    assert verdict.counterexample == 1


def test_double_coset_normal_klein(s4, s4_elem):
    V = closure(s4, [s4_elem[(1, 0, 3, 2)], s4_elem[(2, 3, 0, 1)]])
    assert double_coset_condition(s4, V).is_perfect_code


def test_square_and_double_agree_on_small_corpus(s4, sl23, q16):
    for G in (s4, sl23, q16, construct.dihedral(16)):
        for H in all_subgroups(G):
            a = square_coset_condition(G, H).is_perfect_code
            b = double_coset_condition(G, H).is_perfect_code
            assert a == b, (G.name, H.indices())


def test_omega_coset_sets_trivial_subgroup(d8):
    quotient, lifted = omega_coset_sets(d8, full_subgroup(d8), trivial_subgroup())
    omega = frozenset(g for g in d8.elements() if d8.mul(g, g) == 0)
    assert quotient == omega
    assert lifted == omega


def test_omega_coset_sets_d8_center(d8):
    Z = closure(d8, [2])
    quotient, lifted = omega_coset_sets(d8, full_subgroup(d8), Z)
    assert len(quotient) == 4
    assert len(lifted) == 3
    assert lifted < quotient
    assert 1 in quotient - lifted  # the rotation coset {r, r^3}


def test_omega_coset_sets_klein_pair(s4, s4_elem):
    N = closure(s4, [s4_elem[(1, 0, 2, 3)], s4_elem[(0, 1, 3, 2)]])
    H = closure(s4, [s4_elem[(1, 0, 2, 3)]])
    quotient, lifted = omega_coset_sets(s4, N, H)
    assert quotient == lifted
    assert len(quotient) == 2


def test_omega_coset_sets_requires_normality(s4, s4_elem):
    H = closure(s4, [s4_elem[(1, 0, 2, 3)]])
    with pytest.raises(ValueError, match="normal"):
        omega_coset_sets(s4, full_subgroup(s4), H)


def test_lifted_always_contained_in_quotient(s4, q16):
    for G in (s4, q16):
        for H in all_subgroups(G):
            N = normalizer(G, H)
            quotient, lifted = omega_coset_sets(G, N, H)
            assert lifted <= quotient


def test_omega_criterion_trivial(d8):
    assert omega_criterion(d8, trivial_subgroup()).is_perfect_code


def test_omega_criterion_d8_center(d8):
    assert not omega_criterion(d8, closure(d8, [2])).is_perfect_code


def test_omega_criterion_normal_klein(s4, s4_elem):
    V = closure(s4, [s4_elem[(1, 0, 3, 2)], s4_elem[(2, 3, 0, 1)]])
    assert omega_criterion(s4, V).is_perfect_code


def test_omega_criterion_precondition(s4, s4_elem):
    H = closure(s4, [s4_elem[(1, 2, 0, 3)]])  # 3-group, not normal
    with pytest.raises(ValueError):
        omega_criterion(s4, H)


def test_sylow_reduction_odd_subgroup_all_true(s4, s4_elem):
    H = closure(s4, [s4_elem[(1, 2, 0, 3)]])
    red = sylow_reduction(s4, H)
    assert (
        red.h2_code_in_p
        and red.omega_sylow_quotient
        and red.omega_full_quotient
        and red.h_code_in_g
    )


def test_sylow_reduction_double_transposition_all_false(s4, s4_elem):
    H = closure(s4, [s4_elem[(1, 0, 3, 2)]])
    red = sylow_reduction(s4, H)
    assert not (
        red.h2_code_in_p
        or red.omega_sylow_quotient
        or red.omega_full_quotient
        or red.h_code_in_g
    )


def test_sylow_reduction_a4_all_true(s4, s4_elem):
    A = closure(s4, [s4_elem[(1, 2, 0, 3)], s4_elem[(0, 2, 3, 1)]])
    red = sylow_reduction(s4, A)
    assert red.agree() and red.h_code_in_g


def test_sylow_reduction_tower_containments(s4, sl23):
    for G in (s4, sl23):
        for H in all_subgroups(G):
            red = sylow_reduction(G, H)
            assert red.sylow_part.elements <= red.norm_sylow.elements
            assert red.norm_sylow.elements <= red.norm.elements
            assert red.norm_sylow.elements <= red.ambient_sylow.elements
            assert len(red.ambient_sylow) == 8  # 2-part of both orders is 8


def test_decide_transposition_subgroup(s4, s4_elem):
    assert decide(s4, closure(s4, [s4_elem[(1, 0, 2, 3)]])).is_perfect_code


def test_decide_d8_center_with_counterexample(d8):
    verdict = decide(d8, closure(d8, [2]))
    assert not verdict.is_perfect_code
    assert verdict.criterion is Criterion.SQUARE_COSET
    assert verdict.counterexample == 1


def test_decide_trivial_subgroup(s4):
    verdict = decide(s4, trivial_subgroup())
    assert verdict.is_perfect_code
    assert verdict.criterion is Criterion.ODD_ORDER


def test_decide_with_witness(s4, s4_elem):
    H = closure(s4, [s4_elem[(1, 0, 2, 3)]])
    verdict = decide(s4, H, with_witness=True)
    assert verdict.is_perfect_code
    assert verdict.criterion is Criterion.TRANSVERSAL
    S = connection_set_from_transversal(s4, H, verdict.witness)
    assert is_perfect_code_in_cayley_graph(s4, S, H)


def test_decide_is_conjugation_invariant(s4, d8):
    for G in (s4, d8):
        for H in all_subgroups(G):
            base = decide(G, H).is_perfect_code
            for x in G.elements():
                assert decide(G, conjugate_subgroup(G, H, x)).is_perfect_code == base


def test_verdict_json_shape(d8):
    Z = closure(d8, [2])
    doc = verdict_to_json(d8, Z, decide(d8, Z))
    assert doc == {
        "group": "D8",
        "subgroup": [0, 2],
        "is_perfect_code": False,
        "criterion": "square-coset",
        "counterexample": 1,
    }


def test_verdict_json_with_witness(s4, s4_elem):
    H = closure(s4, [s4_elem[(1, 0, 2, 3)]])
    doc = verdict_to_json(s4, H, decide(s4, H, with_witness=True))
    assert doc["is_perfect_code"] is True
    assert len(doc["witness"]) == 12
