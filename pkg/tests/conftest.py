from __future__ import annotations

from pathlib import Path

import pytest

from blockbounds.ortho import SubsectionSpec

SPECS = Path(__file__).resolve().parent.parent / "specs"

# Cartan matrix (2 + delta)_4 with the first two Brauer characters swapped by -1
EXAMPLE_CARTAN = [[2 + (i == j) for j in range(4)] for i in range(4)]
EXAMPLE_M = [
    [8, 1, 7, -1, 6, 0, 6, 0],
    [1, 2, -1, -2, 0, 0, 0, 0],
    [7, -1, 8, 1, 6, 0, 6, 0],
    [-1, -2, 1, 2, 0, 0, 0, 0],
    [6, 0, 6, 0, 9, 0, 6, 0],
    [0, 0, 0, 0, 0, 0, 0, 0],
    [6, 0, 6, 0, 6, 0, 9, 0],
    [0, 0, 0, 0, 0, 0, 0, 0],
]
EXAMPLE_REDUCED = [[2, 1, 1, 1], [1, 5, 2, 2], [1, 2, 5, 2], [1, 2, 2, 8]]
KIYOTA_POWER = [[5, 1], [1, 2]]
KIYOTA_TRACE = [[5, 4], [4, 5]]


def example_spec() -> SubsectionSpec:
    return SubsectionSpec.create(3, 1, EXAMPLE_CARTAN, [2], [[2, 1, 3, 4]])


def kiyota_spec() -> SubsectionSpec:
    return SubsectionSpec.create(3, 1, [[2, 1], [1, 2]], [2], [[2, 1]])


@pytest.fixture
def specs_dir() -> Path:
    return SPECS
