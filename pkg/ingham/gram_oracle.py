# ingham/gram_oracle.py
"""
Independent verifier for the constant chain.

The exponential system f_k(t) = e^{i omega_k . t} over a centered ball B_R has the
real symmetric Gram matrix G[k, n] = V_R g(R |omega_k - omega_n|), so every finite
question (sharp frame constants, dual families, interpolating functions) reduces
to dense linear algebra on G.
"""
from dataclasses import dataclass
from typing import Dict, Hashable, Optional, Sequence, Tuple, Union
import logging
import math

import numpy as np
from scipy.integrate import quad
from scipy.linalg import cho_factor, cho_solve
from scipy.spatial.distance import cdist, pdist, squareform

from .ball_analysis import RadialWindow, ball_transform_g, ball_volume, eigen_profile, one_minus_ball_transform
from .constants import check_theorem_radius
from .eigensolver import jacobi_eigh
from .exceptions import ConditioningError, InternalConsistencyError, OutOfRangeError
from .frequency_types import FrequencyFamily, PartitionedFamily
from .spectra import geometry

logger = logging.getLogger(__name__)

PSD_TOL = 1e-9
RESIDUAL_TOL = 1e-9
SINGULAR_TOL = 1e-12
BIORTHOGONAL_TOL = 1e-8
NORM_RTOL = 1e-9
INTERPOLATION_TOL = 1e-7


@dataclass(frozen=True, eq=False)
class GramMatrix:
    family: FrequencyFamily
    radius: float
    entries: np.ndarray

    @property
    def size(self) -> int:
        return self.entries.shape[0]

    @property
    def volume(self) -> float:
        return ball_volume(self.family.dimension, self.radius)

    def quadratic_form(self, x: Sequence[complex]) -> float:
        """x* G x for complex x, evaluated on the real and imaginary parts separately."""
        vec = np.asarray(x, dtype=complex).ravel()
        if vec.size != self.size:
            raise ValueError(f"coefficient vector has {vec.size} entries, family has {self.size}")
        re, im = vec.real, vec.imag
        return float(re @ self.entries @ re + im @ self.entries @ im)


def gram_matrix(family: FrequencyFamily, R: float) -> GramMatrix:
    if not R > 0:
        raise OutOfRangeError(f"radius must be positive, got {R}")
    N = family.dimension
    V = ball_volume(N, R)
    distances = squareform(pdist(family.points)) if family.size > 1 else np.zeros((1, 1))
    entries = V * np.asarray(ball_transform_g(N, R * distances), dtype=float).reshape(family.size, family.size)
    np.fill_diagonal(entries, V)
    entries.setflags(write=False)
    return GramMatrix(family, float(R), entries)


@dataclass(frozen=True)
class RieszBounds:
    lambda_min: float
    lambda_max: float
    residual: float


def riesz_bounds(gram: GramMatrix) -> RieszBounds:
    """Extreme eigenvalues of the Gram matrix: the sharp two-sided constants for this family and R."""
    G = gram.entries
    values, vectors = jacobi_eigh(G)
    V = gram.volume
    if values[0] < -PSD_TOL * V:
        raise InternalConsistencyError(f"Gram over radius {gram.radius:.6g} is indefinite: lambda_min={values[0]:.3e}")

    residual = 0.0
    for i in (0, values.size - 1):
        v = vectors[:, i]
        residual = max(residual, float(np.max(np.abs(G @ v - values[i] * v))))
    if residual > RESIDUAL_TOL * V:
        logger.warning(f"Eigenpair residual {residual:.3e} above {RESIDUAL_TOL:g} V_R (R={gram.radius:.6g})")

    bounds = RieszBounds(max(float(values[0]), 0.0), float(values[-1]), residual)
    logger.debug(f"Riesz bounds K={gram.size} R={gram.radius:.6g}: [{bounds.lambda_min:.6e}, {bounds.lambda_max:.6e}]")
    return bounds


def quadratic_form(family: FrequencyFamily, R: float, x: Sequence[complex]) -> float:
    """int_{B_R} |sum x_k e^{i omega_k . t}|^2 dt."""
    return gram_matrix(family, R).quadratic_form(x)


def translated_quadratic_form(family: FrequencyFamily, R: float, center: Sequence[float],
                              x: Sequence[complex]) -> float:
    """Same integral over center + B_R; the shift only rotates each coefficient by e^{i omega_k . center}."""
    c = np.asarray(center, dtype=float).ravel()
    if c.size != family.dimension:
        raise ValueError(f"center has {c.size} components, family dimension is {family.dimension}")
    phases = np.exp(1j * (family.points @ c))
    return quadratic_form(family, R, np.asarray(x, dtype=complex).ravel() * phases)


@dataclass(frozen=True, eq=False)
class DualFamily:
    """Coefficients of the biorthogonal system: y_k = sum_n D[n, k] f_n with D = G^{-1}."""
    coefficients: np.ndarray
    biorthogonality_residual: float
    dual_norms: np.ndarray
    frame_norms: np.ndarray
    lambda_min: float
    lambda_max: float

    @property
    def norm_bounds_hold(self) -> bool:
        upper = math.sqrt(self.lambda_max) * (1.0 + NORM_RTOL)
        lower = (1.0 + NORM_RTOL) / math.sqrt(self.lambda_min)
        return bool(np.all(self.frame_norms <= upper) and np.all(self.dual_norms <= lower))

    @property
    def max_dual_norm(self) -> float:
        return float(np.max(self.dual_norms))


def dual_family(gram: GramMatrix, bounds: Optional[RieszBounds] = None) -> DualFamily:
    bounds = bounds or riesz_bounds(gram)
    V = gram.volume
    if bounds.lambda_min <= SINGULAR_TOL * V:
        raise ConditioningError(bounds.lambda_min, gram.radius)

    G = gram.entries
    identity = np.eye(gram.size)
    try:
        D = cho_solve(cho_factor(G), identity)
    except np.linalg.LinAlgError as exc:
        raise ConditioningError(bounds.lambda_min, gram.radius) from exc
    D = 0.5 * (D + D.T)
    residual = float(np.max(np.abs(D @ G - identity)))
    if residual > BIORTHOGONAL_TOL:
        logger.warning(f"Biorthogonality residual {residual:.3e} at R={gram.radius:.6g} (lambda_min={bounds.lambda_min:.3e})")

    duals = DualFamily(
        coefficients=D,
        biorthogonality_residual=residual,
        dual_norms=np.sqrt(np.diag(D)),
        frame_norms=np.sqrt(np.diag(G)),
        lambda_min=bounds.lambda_min,
        lambda_max=bounds.lambda_max,
    )
    if not duals.norm_bounds_hold:
        logger.warning(f"Dual norm bound failed at R={gram.radius:.6g}: max ||y_k|| = {duals.max_dual_norm:.6e}")
    return duals


def projection_dual(gram: GramMatrix, index: int) -> np.ndarray:
    """
    y_n = (f_n - w_n) / ||f_n - w_n||^2, w_n the orthogonal projection of f_n onto
    the span of the other f_k; returned as coefficients on f_0 .. f_{K-1}.
    """
    K = gram.size
    if not 0 <= index < K:
        raise IndexError(f"index {index} outside 0..{K - 1}")
    G = gram.entries
    coefficients = np.zeros(K)
    coefficients[index] = 1.0
    others = [i for i in range(K) if i != index]
    residual_sq = G[index, index]
    if others:
        block = G[np.ix_(others, others)]
        cross = G[others, index]
        try:
            w = cho_solve(cho_factor(block), cross)
        except np.linalg.LinAlgError as exc:
            raise ConditioningError(0.0, gram.radius) from exc
        coefficients[others] = -w
        residual_sq = G[index, index] - cross @ w
    if not residual_sq > 0:
        raise ConditioningError(float(residual_sq), gram.radius)
    return coefficients / residual_sq


def haraux_map(family: FrequencyFamily, class_labels: Sequence[Hashable], k_prime: Hashable,
               r: float, x: Sequence[complex]) -> np.ndarray:
    """
    Coefficients of y(t) = x(t) - ball average of e^{-i r omega_k' . s} x(t + r s):
    y_k = (1 - g(r |omega_k - omega_k'|)) x_k. Coefficients run over class_labels,
    with k_prime appended when absent; its own entry is annihilated.
    """
    if not r > 0:
        raise ValueError(f"r must be positive, got {r}")
    labels = list(class_labels)
    if k_prime not in labels:
        labels.append(k_prime)
    points = np.array([family.point(lbl) for lbl in labels])
    anchor = family.point(k_prime)
    vec = np.asarray(x, dtype=complex).ravel()
    if vec.size != len(labels):
        raise ValueError(f"coefficient vector has {vec.size} entries, expected {len(labels)}")
    distances = np.linalg.norm(points - anchor, axis=1)
    factors = np.asarray(one_minus_ball_transform(family.dimension, r * distances), dtype=float)
    factors[labels.index(k_prime)] = 0.0
    return factors * vec


class KahaneAssembly:
    """
    Interpolating functions rho_k = psi_{k,1} * ... * psi_{k,m} for a partitioned family at radius R.

    psi_{k,j} is the dual function of k in the class Gram over B_{R_j + r} when k
    belongs to class j, and in the Gram of class j enlarged by k over B_{R_j + 2r}
    otherwise. Its transform is sum_n D[n, k] V g(rho |omega_n - omega|).
    """

    def __init__(self, pf: PartitionedFamily, R: float, window: Optional[RadialWindow] = None):
        self.pf = pf
        self.R = float(R)
        window = window or eigen_profile(pf.dimension)
        self.geometry = geometry(pf, window.mu)
        check_theorem_radius(self.R, self.geometry.critical_radius)
        self.r = (self.R - self.geometry.critical_radius) / (2 * pf.m)
        self._grams: Dict[Tuple[int, Optional[Hashable]], GramMatrix] = {}
        self._bounds: Dict[Tuple[int, Optional[Hashable]], RieszBounds] = {}
        self._duals: Dict[Tuple[int, Optional[Hashable]], DualFamily] = {}

    def _key(self, k: Hashable, j: int) -> Tuple[int, Optional[Hashable]]:
        return (j, None) if self.pf.class_of[k] == j else (j, k)

    def system_labels(self, k: Hashable, j: int) -> Tuple[Hashable, ...]:
        members = self.pf.members(j)
        return members if self.pf.class_of[k] == j else members + (k,)

    def system_radius(self, k: Hashable, j: int) -> float:
        R_j = self.geometry.class_radii[j - 1]
        return R_j + self.r if self.pf.class_of[k] == j else R_j + 2.0 * self.r

    def gram(self, k: Hashable, j: int) -> GramMatrix:
        self.pf.family.index_of(k)
        key = self._key(k, j)
        if key not in self._grams:
            sub = self.pf.family.subfamily(self.system_labels(k, j))
            self._grams[key] = gram_matrix(sub, self.system_radius(k, j))
        return self._grams[key]

    def bounds(self, k: Hashable, j: int) -> RieszBounds:
        key = self._key(k, j)
        if key not in self._bounds:
            self._bounds[key] = riesz_bounds(self.gram(k, j))
        return self._bounds[key]

    def dual(self, k: Hashable, j: int) -> DualFamily:
        key = self._key(k, j)
        if key not in self._duals:
            try:
                self._duals[key] = dual_family(self.gram(k, j), self.bounds(k, j))
            except ConditioningError as exc:
                raise ConditioningError(exc.lambda_min, exc.radius, class_index=j) from exc
        return self._duals[key]

    def psi_hat(self, k: Hashable, j: int, omega: np.ndarray) -> np.ndarray:
        """Transform of psi_{k,j} at the rows of omega, shape (M, N)."""
        gram = self.gram(k, j)
        labels = self.system_labels(k, j)
        column = self.dual(k, j).coefficients[:, labels.index(k)]
        distances = cdist(np.atleast_2d(omega), gram.family.points)
        g = np.asarray(ball_transform_g(self.pf.dimension, gram.radius * distances), dtype=float)
        return gram.volume * g.reshape(distances.shape) @ column

    def rho_hat(self, k: Hashable, omega: Union[Sequence[float], np.ndarray]) -> np.ndarray:
        points = np.atleast_2d(np.asarray(omega, dtype=float))
        if points.shape[1] != self.pf.dimension:
            raise ValueError(f"omega must have {self.pf.dimension} components")
        value = np.ones(points.shape[0], dtype=complex)
        for j in range(1, self.pf.m + 1):
            value *= self.psi_hat(k, j, points)
        return value

    def interpolation_residual(self) -> float:
        """max over k, n of |rho_hat_k(omega_n) - delta_kn|."""
        family = self.pf.family
        identity = np.eye(family.size)
        worst = 0.0
        for i, k in enumerate(family.labels):
            values = self.rho_hat(k, family.points)
            worst = max(worst, float(np.max(np.abs(values - identity[i]))))
        if worst > INTERPOLATION_TOL:
            logger.warning(f"Interpolation residual {worst:.3e} at R={self.R:.6g}")
        return worst

    def sharp_p_factors(self) -> Tuple[float, ...]:
        """Per label, prod_j sqrt(V_j / lambda_min) with the actual Gram minima."""
        factors = []
        for k in self.pf.family.labels:
            product = 1.0
            for j in range(1, self.pf.m + 1):
                lam = self.bounds(k, j).lambda_min
                if lam <= 0.0:
                    product = math.inf
                    break
                product *= math.sqrt(self.gram(k, j).volume / lam)
            factors.append(product)
        return tuple(factors)

    def max_dual_norm(self) -> float:
        return max(self.dual(k, j).max_dual_norm
                   for k in self.pf.family.labels for j in range(1, self.pf.m + 1))


def rho_hat(pf: PartitionedFamily, R: float, k: Hashable, omega: Sequence[float]) -> complex:
    return complex(KahaneAssembly(pf, R).rho_hat(k, omega)[0])


def _slice_volume(n: int, rho: float) -> float:
    if n == 0:
        return 1.0
    return math.pi ** (n / 2.0) * max(rho, 0.0) ** n / math.gamma(n / 2.0 + 1.0)


def quadrature_gram_entry(N: int, R: float, delta: Sequence[float]) -> float:
    """int_{B_R} cos(delta . t) dt by slicing the ball orthogonally to delta."""
    d = float(np.linalg.norm(np.asarray(delta, dtype=float)))
    value, _ = quad(
        lambda u: math.cos(d * u) * _slice_volume(N - 1, math.sqrt(max(R * R - u * u, 0.0))),
        -R, R, limit=400, epsabs=1e-13, epsrel=1e-12,
    )
    return float(value)


def quadrature_check(gram: GramMatrix, samples: int = 8, seed: int = 0) -> float:
    """Largest relative deviation between sampled closed-form entries and slice quadrature."""
    rng = np.random.default_rng(seed)
    K = gram.size
    V = gram.volume
    worst = 0.0
    for _ in range(samples):
        k, n = (int(i) for i in rng.integers(0, K, size=2))
        delta = gram.family.points[k] - gram.family.points[n]
        reference = quadrature_gram_entry(gram.family.dimension, gram.radius, delta)
        worst = max(worst, abs(gram.entries[k, n] - reference) / V)
    logger.debug(f"Quadrature cross-check on {samples} entries: max deviation {worst:.2e} V_R")
    return worst
