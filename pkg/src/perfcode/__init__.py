"""Subgroup perfect codes in Cayley graphs of small finite groups."""

from .codes import (
    CodeVerdict,
    ConnectionSet,
    Criterion,
    SylowReduction,
    Transversal,
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
    verdict_to_json,
)
from .construct import (
    alternating,
    build_named,
    cyclic,
    dicyclic,
    dihedral,
    direct_product,
    elementary_abelian,
    quaternion8,
    special_linear_2_3,
    symmetric,
)
from .corpus import (
    CorpusEntry,
    CrossCheckReport,
    Provenance,
    builtin_corpus,
    cross_check,
    make_entry,
    report_emit,
)
from .extraspecial import (
    ExtraspecialClassification,
    Family,
    SymplecticForm,
    build_family,
    central_product,
    classify_extraspecial,
    classify_sylow_extraspecial,
    is_extraspecial,
    symplectic_form,
)
from .group import (
    FiniteGroup,
    Subgroup,
    closure,
    commutator,
    conjugate_subgroup,
    element_order,
    full_subgroup,
    group_from_permutations,
    group_to_json,
    load_group,
    omega1,
    squares,
    subgroup_as_group,
    subgroup_from_elements,
    trivial_subgroup,
)
from .subgroups import (
    AbelianInvariants,
    CosetDecomposition,
    abelian_invariants,
    all_subgroups,
    center,
    centralizer,
    coset_decomposition,
    derived_subgroup,
    frattini_subgroup,
    is_maximal_abelian,
    is_normal,
    isomorphic_small,
    normalizer,
    sylow_2_overgroup,
    sylow_2_subgroup,
    two_part,
)

__version__ = "0.1.0"
