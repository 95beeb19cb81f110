import os
import sys

import pytest
from hypothesis import settings, strategies as st

sys.path.insert(0, os.path.dirname(__file__))

from contact_duality import FiniteCofiniteAlgebra, PeriodicSet, PowersetAlgebra, UltPeriodicAlgebra

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def periodic_sets(modulus):
    """Ultimately periodic sets with period dividing ``modulus``."""
    return st.builds(
        lambda head, t, res: PeriodicSet.make([h for h in head if h < t], t, res, modulus),
        st.frozensets(st.integers(0, 12), max_size=5),
        st.integers(0, 12),
        st.frozensets(st.integers(0, modulus - 1), max_size=modulus),
    )


def finite_cofinite():
    return st.one_of(
        st.builds(PeriodicSet.finite, st.frozensets(st.integers(0, 15), max_size=6)),
        st.builds(PeriodicSet.cofinite_except, st.frozensets(st.integers(0, 15), max_size=6)),
    )


@pytest.fixture
def p2():
    return PowersetAlgebra(["p", "q"])


@pytest.fixture
def p3():
    return PowersetAlgebra(["p", "q", "r"])


@pytest.fixture
def fc():
    return FiniteCofiniteAlgebra()


@pytest.fixture
def up6():
    return UltPeriodicAlgebra(6)
