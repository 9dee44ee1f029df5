import os
import sys

import numpy as np
import pytest

sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from ingham.frequency_types import FrequencyFamily, PartitionedFamily
from ingham.spectra import residue_partition


def integer_family(count: int = 21) -> PartitionedFamily:
    """Integers 0..count-1, one class."""
    return PartitionedFamily.single_class(FrequencyFamily(1, np.arange(count, dtype=float)))


def perturbed_family(count: int = 21) -> PartitionedFamily:
    k = np.arange(count, dtype=float)
    return PartitionedFamily.single_class(FrequencyFamily(1, k + 0.2 * np.sin(k)))


def residue_family(count: int = 21, m: int = 2) -> PartitionedFamily:
    return residue_partition(FrequencyFamily(1, np.arange(count, dtype=float)), m)


def lattice_family(side: int = 5) -> PartitionedFamily:
    grid = np.array([(i, j) for i in range(side) for j in range(side)], dtype=float)
    return PartitionedFamily.single_class(FrequencyFamily(2, grid))


FAMILIES = {
    "integers": integer_family,
    "perturbed": perturbed_family,
    "residue": residue_family,
    "lattice": lattice_family,
}


@pytest.fixture
def integers():
    return integer_family()


@pytest.fixture
def residue():
    return residue_family()


@pytest.fixture
def lattice():
    return lattice_family()
