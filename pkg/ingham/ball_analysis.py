# ingham/ball_analysis.py
"""
Special-function layer for the unit ball B_1 in R^N.

H is the first Dirichlet eigenfunction of -Laplace on B_1, normalized to
||H||_2 = 1 and positive inside, h its Fourier transform, and g the
normalized Fourier transform of the indicator of B_1. With nu = N/2 - 1,

    H(rho) = c * rho^{-nu} J_nu(sqrt(mu) rho),     mu = j_{nu,1}^2
    g(rho) = Gamma(N/2 + 1) (2/rho)^{N/2} J_{N/2}(rho)

Everything radial is expressed through Lambda_nu(x) = Gamma(nu+1) (2/x)^nu J_nu(x),
which is entire in x with Lambda_nu(0) = 1; near zero it is summed as a power
series so that rho -> 0 limits need no special casing.
"""
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Tuple, Union
import logging
import math

import numpy as np
from scipy.optimize import brentq, minimize_scalar
from scipy.special import gamma as gamma_fn, jv

from .exceptions import (
    CertificationError,
    InternalConsistencyError,
    OutOfRangeError,
    UnsupportedOrderError,
)
from .quadrature import adaptive_gauss_legendre

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

MAX_ARGUMENT = 1e4
MAX_ZERO_ORDER = 50.0
MAX_DIMENSION = 10
MAX_TRANSFORM_ARGUMENT = 1e3
SERIES_SWITCH = 2.0
SERIES_TERMS = 40
QUADRATURE_TOL = 1e-11
HALF_PI = 0.5 * math.pi
ALPHA_SAFETY = 1e-3


def _as_array(x: ArrayLike) -> Tuple[np.ndarray, bool]:
    arr = np.asarray(x, dtype=float)
    return np.atleast_1d(arr), arr.ndim == 0


def _restore(values: np.ndarray, scalar: bool) -> ArrayLike:
    return float(values[0]) if scalar else values


def _check_order(order: float) -> None:
    if order < -0.5 or not float(2 * order).is_integer():
        raise UnsupportedOrderError(f"Bessel order must be a half-integer >= -1/2, got {order}")


def _check_dimension(N: int) -> None:
    if not 1 <= N <= MAX_DIMENSION:
        raise OutOfRangeError(f"dimension must be in 1..{MAX_DIMENSION}, got {N}")


def _series_tail(nu: float, x: np.ndarray) -> np.ndarray:
    """sum_{m>=1} (-x^2/4)^m Gamma(nu+1) / (m! Gamma(nu+m+1)) = Lambda_nu(x) - 1"""
    q = -0.25 * x * x
    term = np.ones_like(x)
    total = np.zeros_like(x)
    for m in range(1, SERIES_TERMS):
        term = term * q / (m * (nu + m))
        total += term
    return total


def bessel_j(order: float, x: ArrayLike) -> ArrayLike:
    """J_order(x) for half-integer order >= -1/2 and 0 <= x <= 1e4."""
    _check_order(order)
    arr, scalar = _as_array(x)
    if np.any(arr < 0) or np.any(arr > MAX_ARGUMENT):
        raise OutOfRangeError(f"Bessel argument outside [0, {MAX_ARGUMENT:g}]")
    return _restore(jv(order, arr), scalar)


def normalized_bessel(nu: float, x: ArrayLike) -> ArrayLike:
    """Lambda_nu(x) = Gamma(nu+1) (2/x)^nu J_nu(x), with Lambda_nu(0) = 1."""
    arr, scalar = _as_array(x)
    ax = np.abs(arr)
    out = np.empty_like(ax)
    small = ax < SERIES_SWITCH
    out[small] = 1.0 + _series_tail(nu, ax[small])
    big = ax[~small]
    out[~small] = gamma_fn(nu + 1.0) * (2.0 / big) ** nu * jv(nu, big)
    return _restore(out, scalar)


def one_minus_normalized_bessel(nu: float, x: ArrayLike) -> ArrayLike:
    """1 - Lambda_nu(x) without cancellation near x = 0."""
    arr, scalar = _as_array(x)
    ax = np.abs(arr)
    out = np.empty_like(ax)
    small = ax < SERIES_SWITCH
    out[small] = -_series_tail(nu, ax[small])
    big = ax[~small]
    out[~small] = 1.0 - gamma_fn(nu + 1.0) * (2.0 / big) ** nu * jv(nu, big)
    return _restore(out, scalar)


@lru_cache(maxsize=64)
def first_bessel_zero(order: float) -> float:
    """First positive zero of J_order: scan for a sign change, then Brent."""
    _check_order(order)
    if order > MAX_ZERO_ORDER:
        raise OutOfRangeError(f"zero search supports order <= {MAX_ZERO_ORDER:g}, got {order}")
    step = 0.25
    lo = max(order, 0.0) + 1e-3
    while jv(order, lo + step) > 0:
        lo += step
    zero = brentq(lambda x: jv(order, x), lo, lo + step, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    logger.debug(f"First zero of J_{order}: {zero:.15f}")
    return float(zero)


def dirichlet_mu(N: int) -> float:
    """First Dirichlet eigenvalue of -Laplace on the unit ball of R^N."""
    _check_dimension(N)
    return first_bessel_zero(N / 2.0 - 1.0) ** 2


def sphere_area(N: int) -> float:
    """Surface area of the unit sphere in R^N (2 for N = 1)."""
    return 2.0 * math.pi ** (N / 2.0) / math.gamma(N / 2.0)


def ball_volume(N: int, R: float) -> float:
    if R <= 0:
        raise OutOfRangeError(f"ball radius must be positive, got {R}")
    return math.pi ** (N / 2.0) * R ** N / math.gamma(N / 2.0 + 1.0)


@dataclass(frozen=True)
class RadialWindow:
    """First Dirichlet eigenfunction H of B_1, H(rho) = amplitude * Lambda_nu(sqrt(mu) rho)."""
    dimension: int
    mu: float
    amplitude: float
    l2_norm: float
    h_at_zero: float

    @property
    def order(self) -> float:
        return self.dimension / 2.0 - 1.0

    def profile(self, rho: ArrayLike) -> ArrayLike:
        arr, scalar = _as_array(rho)
        inside = np.abs(arr) < 1.0
        out = np.zeros_like(arr)
        out[inside] = self.amplitude * normalized_bessel(self.order, math.sqrt(self.mu) * np.abs(arr[inside]))
        return _restore(out, scalar)

    def transform(self, t: ArrayLike) -> ArrayLike:
        return fourier_h(self, t)

    def scaled_transform(self, t: ArrayLike, s: float) -> ArrayLike:
        """Transform of H_s(x) = H(x/s): h_s(t) = s^N h(s t)."""
        return s ** self.dimension * fourier_h(self, s * np.asarray(t, dtype=float))

    def scaled_eigenvalue(self, s: float) -> float:
        return self.mu / (s * s)

    def scaled_norm_squared(self, s: float) -> float:
        return s ** self.dimension * self.l2_norm ** 2


@lru_cache(maxsize=MAX_DIMENSION)
def eigen_profile(N: int) -> RadialWindow:
    _check_dimension(N)
    nu = N / 2.0 - 1.0
    j = first_bessel_zero(nu)
    sigma = sphere_area(N)
    # int_0^1 rho^{-2 nu} J_nu(j rho)^2 rho^{N-1} d rho = J_{nu+1}(j)^2 / 2
    c = 1.0 / math.sqrt(sigma * jv(nu + 1.0, j) ** 2 / 2.0)
    amplitude = c * (j / 2.0) ** nu / math.gamma(nu + 1.0)
    draft = RadialWindow(N, j * j, amplitude, 1.0, 1.0)

    norm_sq = adaptive_gauss_legendre(
        lambda rho: sigma * draft.profile(rho) ** 2 * rho ** (N - 1), 0.0, 1.0, tol=1e-13
    )
    mass = adaptive_gauss_legendre(lambda rho: sigma * draft.profile(rho) * rho ** (N - 1), 0.0, 1.0, tol=1e-13)
    l2_norm = math.sqrt(float(norm_sq))
    if abs(l2_norm - 1.0) > 1e-10:
        raise InternalConsistencyError(f"eigenfunction normalization drifted: ||H|| = {l2_norm!r} (N={N})")
    window = RadialWindow(N, j * j, amplitude, l2_norm, float(mass))
    logger.debug(f"Eigen profile N={N}: mu={window.mu:.12f} h(0)={window.h_at_zero:.12f}")
    return window


def fourier_h(window: RadialWindow, t: ArrayLike) -> ArrayLike:
    """
    h(t) = int_{B_1} H(x) cos(x.t) dx through the radial reduction
    h(t) = sigma_N int_0^1 H(rho) Lambda_nu(rho t) rho^{N-1} d rho.
    """
    arr, scalar = _as_array(t)
    arr = np.abs(arr)
    if np.any(arr > MAX_TRANSFORM_ARGUMENT):
        raise OutOfRangeError(f"transform argument outside [0, {MAX_TRANSFORM_ARGUMENT:g}]")
    N = window.dimension
    nu = window.order
    sigma = sphere_area(N)

    def integrand(rho: np.ndarray) -> np.ndarray:
        radial = sigma * window.profile(rho) * rho ** (N - 1)
        return radial[None, :] * normalized_bessel(nu, np.outer(arr, rho))

    panels = max(1, math.ceil((float(arr.max()) + math.sqrt(window.mu)) / 8.0))
    values = adaptive_gauss_legendre(integrand, 0.0, 1.0, tol=QUADRATURE_TOL, panels=panels)
    return _restore(np.asarray(values), scalar)


@lru_cache(maxsize=64)
def min_h_squared(window: RadialWindow, step: float = 1e-3) -> float:
    """min over |t| <= pi/2 of h(t)^2: grid scan, then bounded refinement at the best node."""
    n = math.ceil(HALF_PI / step)
    grid = np.linspace(0.0, HALF_PI, n + 1)
    values = fourier_h(window, grid) ** 2
    i = int(np.argmin(values))
    lo, hi = grid[max(i - 1, 0)], grid[min(i + 1, n)]
    refined = minimize_scalar(
        lambda t: fourier_h(window, t) ** 2, bounds=(lo, hi), method="bounded", options={"xatol": 1e-12}
    )
    best = min(float(values[i]), float(refined.fun))
    if not best > 0.0:
        raise InternalConsistencyError(
            f"min h^2 on |t| <= pi/2 is {best!r} for N={window.dimension}; special-function evaluation is broken"
        )
    logger.debug(f"min h^2 (N={window.dimension}) = {best:.12f} near t={grid[i]:.4f}")
    return best


def ball_transform_g(N: int, rho: ArrayLike) -> ArrayLike:
    """g(rho) = (1/V_1) int_{B_1} cos(omega.s) ds at |omega| = rho."""
    return normalized_bessel(N / 2.0, rho)


def one_minus_ball_transform(N: int, rho: ArrayLike) -> ArrayLike:
    return one_minus_normalized_bessel(N / 2.0, rho)


@dataclass(frozen=True)
class BallTransform:
    dimension: int

    def evaluate(self, rho: ArrayLike) -> ArrayLike:
        return ball_transform_g(self.dimension, rho)

    def one_minus(self, rho: ArrayLike) -> ArrayLike:
        return one_minus_ball_transform(self.dimension, rho)

    def __call__(self, rho: ArrayLike) -> ArrayLike:
        return self.evaluate(rho)


def transform_envelope_constant(N: int) -> float:
    """C with |g(rho)| <= C rho^{-(N+1)/2}, from |J_nu(x)| <= sqrt(2/(pi x)) for nu >= 1/2."""
    nu = N / 2.0
    return 2.0 ** nu * math.gamma(nu + 1.0) * math.sqrt(2.0 / math.pi)


@lru_cache(maxsize=256)
def alpha_m_plus_1(N: int, T: float, points: int = 2000, rtol: float = 1e-6, max_doublings: int = 6) -> float:
    """
    Certified alpha with 1 - g(rho) >= alpha * min(rho, T)^2 for every rho > 0.

    On (0, rho_end] the ratio (1 - g)/min(rho, T)^2 is minimized on a grid
    refined by step doubling; beyond rho_end >= max(T, rho*) the envelope
    bound gives 1 - g >= 1 - C rho_end^{-(N+1)/2} >= 1/2. The splitting point
    t_0 of the analytic argument is never materialized.
    """
    if T <= 0:
        raise ValueError(f"T must be positive, got {T}")
    C = transform_envelope_constant(N)
    rho_star = (2.0 * C) ** (2.0 / (N + 1))
    rho_end = max(rho_star, T)
    tail = (1.0 - C * rho_end ** (-(N + 1) / 2.0)) / (T * T)

    def grid(n: int) -> np.ndarray:
        return np.union1d(np.linspace(0.0, rho_end, n + 1)[1:], [T])

    def ratio(rho: np.ndarray) -> np.ndarray:
        return one_minus_ball_transform(N, rho) / np.minimum(rho, T) ** 2

    n = points
    best = float(np.min(ratio(grid(n))))
    for _ in range(max_doublings):
        n *= 2
        current = float(np.min(ratio(grid(n))))
        converged = abs(current - best) <= rtol * abs(current)
        best = min(best, current)
        if converged:
            break
    alpha = min(best, tail) * (1.0 - ALPHA_SAFETY)

    check = grid(10 * n)
    slack = one_minus_ball_transform(N, check) - alpha * np.minimum(check, T) ** 2
    if np.any(slack < 0):
        worst = float(check[int(np.argmin(slack))])
        raise CertificationError(f"alpha_(m+1)={alpha:.6e} violated at rho={worst:.6g} (N={N}, T={T})")
    logger.debug(f"alpha_(m+1)(N={N}, T={T:.6g}) = {alpha:.6e} (grid {n}, rho_end {rho_end:.4g})")
    return alpha


def profile_table(N: int, count: int = 201, rho_max: float = 2.0 * math.pi) -> List[Tuple[float, float, float, float]]:
    """Rows (rho, H(rho), h(rho), g(rho)) for profile dumps."""
    window = eigen_profile(N)
    rho = np.linspace(0.0, rho_max, count)
    H = window.profile(rho)
    h = fourier_h(window, rho)
    g = ball_transform_g(N, rho)
    return [(float(a), float(b), float(c), float(d)) for a, b, c, d in zip(rho, H, h, g)]
