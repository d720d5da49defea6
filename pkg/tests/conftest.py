import pytest

from app.core.loader import build_structure, default_presentation
from app.services.classical_group_service import free_abelian, free_group
from app.services.free_plane_service import free_plane
from app.services.selftest_service import DINF, PATH, TRIANGLE, V4


@pytest.fixture(scope="session")
def dinf():
    return build_structure(DINF)


@pytest.fixture(scope="session")
def dinf_ap(dinf):
    return default_presentation(dinf)


@pytest.fixture(scope="session")
def v4():
    return build_structure(V4)


@pytest.fixture(scope="session")
def path_graph():
    return build_structure(PATH)


@pytest.fixture(scope="session")
def triangle():
    return build_structure(TRIANGLE)


@pytest.fixture(scope="session")
def z2():
    return free_abelian(2)


@pytest.fixture(scope="session")
def z2_ap(z2):
    return default_presentation(z2)


@pytest.fixture(scope="session")
def f2():
    return free_group(2)


@pytest.fixture(scope="session")
def f2_ap(f2):
    return default_presentation(f2)


@pytest.fixture()
def plane():
    return free_plane()
