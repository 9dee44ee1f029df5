# ingham/spectra.py
from typing import Tuple
import logging
import math

import numpy as np
from scipy.spatial.distance import pdist

from .exceptions import FamilyTooSmallError, FamilyValidationError
from .frequency_types import FrequencyFamily, GapGeometry, PartitionedFamily, PartitionSource

logger = logging.getLogger(__name__)


def minimal_gap(family: FrequencyFamily) -> float:
    """Smallest Euclidean distance between two frequencies; +inf for a single point."""
    if family.size == 1:
        return math.inf
    return float(np.min(pdist(family.points)))


def class_gaps(pf: PartitionedFamily) -> Tuple[float, ...]:
    """Within-class minimal gaps gamma_j; a singleton class has gamma_j = +inf."""
    gaps = []
    for j in range(1, pf.m + 1):
        idx = pf.class_indices(j)
        if len(idx) < 2:
            gaps.append(math.inf)
        else:
            gaps.append(float(np.min(pdist(pf.family.points[idx]))))
    return tuple(gaps)


def geometry(pf: PartitionedFamily, mu: float) -> GapGeometry:
    """Critical radii R_j = 2 sqrt(mu) / gamma_j and R0 = sum R_j."""
    if mu <= 0:
        raise ValueError(f"mu must be positive, got {mu}")
    gamma = minimal_gap(pf.family)
    gammas = class_gaps(pf)
    two_root_mu = 2.0 * math.sqrt(mu)
    radii = tuple(0.0 if math.isinf(g) else two_root_mu / g for g in gammas)
    geo = GapGeometry(
        gamma=gamma,
        class_gammas=gammas,
        mu=float(mu),
        class_radii=radii,
        critical_radius=float(math.fsum(radii)),
    )
    logger.debug(f"Geometry: gamma={gamma:.6g} class_gammas={gammas} R0={geo.critical_radius:.6g}")
    return geo


def _sorted_line(family: FrequencyFamily) -> np.ndarray:
    if family.dimension != 1:
        raise FamilyValidationError(f"1-D family required, got dimension {family.dimension}")
    return np.sort(family.points[:, 0])


def one_d_mth_gap(family: FrequencyFamily, m: int) -> float:
    """gamma'_m = min_k (omega_{k+m} - omega_k) / m over the sorted line."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    line = _sorted_line(family)
    if line.size <= m:
        raise FamilyTooSmallError("family too small for m-th gap")
    return float(np.min(line[m:] - line[:-m]) / m)


def remark_radius(family: FrequencyFamily, m: int) -> float:
    """The 1-D radius 2*pi / gamma'_m quoted alongside the residue partition."""
    return 2.0 * math.pi / one_d_mth_gap(family, m)


def residue_partition(family: FrequencyFamily, m: int) -> PartitionedFamily:
    """Assign the k-th smallest frequency (k from 0) to class (k mod m) + 1."""
    if m < 1:
        raise ValueError(f"m must be positive, got {m}")
    line = _sorted_line(family)
    order = np.argsort(family.points[:, 0], kind="stable")
    class_of = {family.labels[i]: (rank % m) + 1 for rank, i in enumerate(order)}
    logger.debug(f"Residue partition of {line.size} frequencies into {m} classes")
    return PartitionedFamily(family, class_of, m, PartitionSource.RESIDUE)
