import pytest

from hecke.residual import all_generic_residual_points, system_and_subsystems


@pytest.fixture(scope="session")
def g2_points():
    return [p for _, pts in all_generic_residual_points("G2") for p in pts]


@pytest.fixture(scope="session")
def f4_points():
    return [p for _, pts in all_generic_residual_points("F4") for p in pts]


@pytest.fixture(scope="session")
def g2_system():
    return system_and_subsystems("G2")
