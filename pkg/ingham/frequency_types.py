from __future__ import annotations
from enum import Enum
from dataclasses import dataclass, field, asdict
from typing import Dict, Hashable, Iterable, List, Mapping, Optional, Sequence, Tuple
import math

import numpy as np

from .exceptions import DuplicateFrequencyError, FamilyValidationError, PartitionError, UnknownLabelError


class PartitionSource(Enum):
    EXPLICIT = "explicit"
    RESIDUE = "residue"     # k-th smallest -> (k mod m) + 1, 1-D only
    SINGLE = "single"


class ConstantsMode(Enum):
    SHARP = "sharp"                  # alpha_j(r), alpha'_j(r) at the actual r
    PAPER_UNIFORM = "paper_uniform"  # r-free worst case over 0 < r <= R0/(2m)


@dataclass(frozen=True, eq=False)
class FrequencyFamily:
    """Finite family of distinct frequency vectors in R^N, one label per vector."""
    dimension: int
    points: np.ndarray
    labels: Tuple[Hashable, ...] = ()

    def __post_init__(self):
        if not isinstance(self.dimension, (int, np.integer)) or self.dimension < 1:
            raise FamilyValidationError(f"dimension must be a positive integer, got {self.dimension!r}")
        pts = np.array(self.points, dtype=float)
        if pts.ndim == 1 and self.dimension == 1:
            pts = pts.reshape(-1, 1)
        if pts.ndim != 2 or pts.shape[1] != self.dimension:
            raise FamilyValidationError(
                f"points must have shape (K, {self.dimension}), got {pts.shape}"
            )
        if pts.shape[0] < 1:
            raise FamilyValidationError("family must contain at least one frequency")
        if not np.all(np.isfinite(pts)):
            raise FamilyValidationError("frequencies must be finite")

        labels = tuple(self.labels) if self.labels else tuple(range(pts.shape[0]))
        if len(labels) != pts.shape[0]:
            raise FamilyValidationError(f"{len(labels)} labels for {pts.shape[0]} points")
        if len(set(labels)) != len(labels):
            raise FamilyValidationError("labels must be unique")

        # Exact comparison: near-duplicates are legal and just give a tiny gap.
        order = np.lexsort(pts.T[::-1])
        sorted_pts = pts[order]
        same = np.all(sorted_pts[1:] == sorted_pts[:-1], axis=1)
        if np.any(same):
            i = int(np.argmax(same))
            raise DuplicateFrequencyError((labels[order[i]], labels[order[i + 1]]))

        pts.setflags(write=False)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "dimension", int(self.dimension))

    @property
    def size(self) -> int:
        return self.points.shape[0]

    def index_of(self, label: Hashable) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise UnknownLabelError(label) from None

    def point(self, label: Hashable) -> np.ndarray:
        return self.points[self.index_of(label)]

    def subfamily(self, labels: Sequence[Hashable]) -> "FrequencyFamily":
        idx = [self.index_of(lbl) for lbl in labels]
        return FrequencyFamily(self.dimension, self.points[idx], tuple(labels))

    def scaled(self, s: float) -> "FrequencyFamily":
        return FrequencyFamily(self.dimension, self.points * float(s), self.labels)


@dataclass(frozen=True, eq=False)
class PartitionedFamily:
    """A family plus its class map label -> j in {1..m}."""
    family: FrequencyFamily
    class_of: Mapping[Hashable, int]
    m: int
    source: PartitionSource = PartitionSource.EXPLICIT

    def __post_init__(self):
        if not isinstance(self.m, (int, np.integer)) or self.m < 1:
            raise PartitionError(f"m must be a positive integer, got {self.m!r}")
        mapping = dict(self.class_of)
        missing = [lbl for lbl in self.family.labels if lbl not in mapping]
        if missing:
            raise PartitionError(f"labels without a class: {missing[:5]}")
        known = set(self.family.labels)
        extra = [lbl for lbl in mapping if lbl not in known]
        if extra:
            raise PartitionError(f"class map names unknown labels: {extra[:5]}")
        bad = {lbl: j for lbl, j in mapping.items() if not (isinstance(j, (int, np.integer)) and 1 <= j <= self.m)}
        if bad:
            raise PartitionError(f"class indices outside 1..{self.m}: {bad}")
        used = set(int(j) for j in mapping.values())
        empty = sorted(set(range(1, self.m + 1)) - used)
        if empty:
            raise PartitionError(f"empty classes: {empty}")
        object.__setattr__(self, "class_of", {lbl: int(j) for lbl, j in mapping.items()})
        object.__setattr__(self, "m", int(self.m))

    @classmethod
    def single_class(cls, family: FrequencyFamily) -> "PartitionedFamily":
        return cls(family, {lbl: 1 for lbl in family.labels}, 1, PartitionSource.SINGLE)

    @property
    def dimension(self) -> int:
        return self.family.dimension

    def members(self, j: int) -> Tuple[Hashable, ...]:
        """Labels of class j, in family order."""
        return tuple(lbl for lbl in self.family.labels if self.class_of[lbl] == j)

    def class_indices(self, j: int) -> List[int]:
        return [i for i, lbl in enumerate(self.family.labels) if self.class_of[lbl] == j]

    def scaled(self, s: float) -> "PartitionedFamily":
        return PartitionedFamily(self.family.scaled(s), self.class_of, self.m, self.source)


@dataclass(frozen=True)
class GapGeometry:
    gamma: float
    class_gammas: Tuple[float, ...]
    mu: float
    class_radii: Tuple[float, ...]
    critical_radius: float

    @property
    def m(self) -> int:
        return len(self.class_gammas)

    @property
    def theorem_radius(self) -> float:
        return self.critical_radius

    def is_singleton(self, j: int) -> bool:
        return math.isinf(self.class_gammas[j - 1])


@dataclass(frozen=True)
class ConstantChain:
    """Every constant of the proof, instantiated for one family and one radius."""
    R: float
    R0: float
    m: int
    dimension: int
    gamma: float
    mode: ConstantsMode
    r: float
    alpha0_prime: float
    alpha0: float
    alpha0_small: float
    alpha_j: Tuple[float, ...]
    alpha_m1: float
    alpha_j_prime: Tuple[float, ...]
    p_factors: Tuple[float, ...]
    window_g0: float          # g(0) = h(0)^2 (r/2)^{2N}
    window_G0: float          # G(0) = (r/2)^N
    L: float
    c1: float
    c2: float
    exponent: int

    def to_dict(self) -> Dict:
        data = asdict(self)
        data["mode"] = self.mode.value
        data["alpha_j"] = list(self.alpha_j)
        data["alpha_j_prime"] = list(self.alpha_j_prime)
        data["p_factors"] = list(self.p_factors)
        return data

    def summary(self) -> str:
        return (
            f"R={self.R:.6g} r={self.r:.4g} L={self.L:.4e} c1={self.c1:.4e} "
            f"c2={self.c2:.4e} exponent={self.exponent} ({self.mode.value})"
        )
