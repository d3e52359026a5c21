import pytest

from kappadouble.kappa.double import derive_full_cross, derive_phase_space
from kappadouble.kappa.pairings import phase_space_pairing
from kappadouble.kappa.presentations import (DEFAULT_PROFILE, PAPER_LITERAL, build_kappa_algebra,
                                             build_kappa_group, build_weyl)


@pytest.fixture(scope="session")
def algebra():
    return build_kappa_algebra(6)


@pytest.fixture(scope="session")
def algebra_literal():
    return build_kappa_algebra(6, PAPER_LITERAL)


@pytest.fixture(scope="session")
def group():
    return build_kappa_group(6)


@pytest.fixture(scope="session")
def phase():
    """(rewrite system, derived commutators) of the translation sector."""
    rs, derived, _ = derive_phase_space(6, DEFAULT_PROFILE)
    return rs, derived


@pytest.fixture(scope="session")
def phase_pairing():
    return phase_space_pairing(6)


@pytest.fixture(scope="session")
def double():
    """(rewrite system, derived cross relations, (algebra, group, pairing))."""
    return derive_full_cross(6, DEFAULT_PROFILE)


@pytest.fixture(scope="session")
def weyl():
    return build_weyl(6)
