from __future__ import annotations

from itertools import permutations

import pytest

from perfcode import construct
from perfcode.extraspecial import Family, build_family


@pytest.fixture(scope="session")
def d8():
    return construct.dihedral(8)


@pytest.fixture(scope="session")
def q8():
    return construct.quaternion8()


@pytest.fixture(scope="session")
def q16():
    return construct.dicyclic(16)


@pytest.fixture(scope="session")
def s4():
    return construct.symmetric(4)


@pytest.fixture(scope="session")
def a4():
    return construct.alternating(4)


@pytest.fixture(scope="session")
def sl23():
    return construct.special_linear_2_3()


@pytest.fixture(scope="session")
def g21():
    return build_family(2, Family.GM1)


@pytest.fixture(scope="session")
def g22():
    return build_family(2, Family.GM2)


@pytest.fixture(scope="session")
def s4_elem():
    """Index of each degree-4 permutation in the S4 element order."""
    elems = sorted(permutations(range(4)))
    return {p: i for i, p in enumerate(elems)}
