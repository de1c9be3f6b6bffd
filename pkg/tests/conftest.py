"""
Fixtures partagées: grilles et configurations de référence.
"""

import os

import pytest

from mkdv_lab.solutions import BreatherParams, Configuration, SolitonParams
from mkdv_lab.spectral import Grid

SCENARIO_DIR = os.path.join(os.path.dirname(os.path.dirname(__file__)), "scenarios")


@pytest.fixture
def grid():
    """Grille de référence L = 100, N = 4096: résout les breathers beta = 2."""
    return Grid(length=100.0, points=4096)


@pytest.fixture
def coarse_grid():
    """Grille L = 100, N = 1024 (suffisante pour un soliton c = 1)."""
    return Grid(length=100.0, points=1024)


@pytest.fixture
def soliton():
    return SolitonParams(c=1.0, x0=0.0)


@pytest.fixture
def breather():
    return BreatherParams(alpha=1.0, beta=2.0)


@pytest.fixture
def single_soliton(soliton):
    return Configuration(objects=[soliton])


@pytest.fixture
def two_objects():
    """Soliton c = 1 en -20, breather (0.8, 2) en +20: D = 20."""
    return Configuration(objects=[
        SolitonParams(c=1.0, x0=-20.0),
        BreatherParams(alpha=0.8, beta=2.0, x1=0.0, x2=-20.0),
    ])


@pytest.fixture
def scenario_path():
    def _path(name: str) -> str:
        return os.path.join(SCENARIO_DIR, name)
    return _path


@pytest.fixture
def baseline_data():
    """Scénario soliton seul, court, sous forme de dictionnaire."""
    return {
        "schema_version": 1,
        "name": "short_baseline",
        "objects": {"objects": [{"kind": "soliton", "c": 1.0, "x0": 0.0}]},
        "separation": 10.0,
        "perturbation": {"kind": "none", "amplitude": 0.0},
        "solver": {"dt": 0.001, "t_final": 0.5, "snapshot_stride": 100},
    }
