# ingham/constants.py
"""
Explicit constants of the two-sided estimate

    c1 (R - R0)^{5m-4+2N} sum |x_k|^2 <= int_{B_R} |sum x_k e^{i omega_k . t}|^2 dt <= c2 sum |x_k|^2

for a partitioned family and a radius R0 < R <= 2 R0. Every window is built
from the normalized eigenfunction H (||H||_2 = 1), so G(0) = ||H_s||^2 = s^N.
"""
from typing import Dict, Optional, Tuple
import logging
import math

import numpy as np

from .ball_analysis import RadialWindow, alpha_m_plus_1, ball_volume, eigen_profile, fourier_h, min_h_squared
from .exceptions import HypothesisViolationError, InternalConsistencyError, SingletonClassError
from .frequency_types import ConstantChain, ConstantsMode, GapGeometry, PartitionedFamily
from .spectra import geometry

logger = logging.getLogger(__name__)

SUP_GRID_STEP = 1e-3
RANGE_RTOL = 1e-12


def exponent(m: int, N: int) -> int:
    if m < 1 or N < 1:
        raise ValueError(f"m and N must be positive, got m={m}, N={N}")
    return 5 * m - 4 + 2 * N


def covering_factor(N: int, gamma: float, R_ball: float) -> float:
    """Number of translates of B_{pi/gamma} used to cover B_{R_ball}: (1 + R gamma / pi)^N."""
    return (1.0 + R_ball * gamma / math.pi) ** N


def alpha_zero(N: int, gamma: float, R_ball: float, window: RadialWindow) -> Tuple[float, float]:
    """
    Upper constant: alpha0' on B_{pi/gamma} from the window G = H_{gamma/2} * H_{gamma/2},
    then alpha0 = covering_factor * alpha0' on B_{R_ball}.
    """
    if not (0 < gamma < math.inf) or R_ball <= 0:
        raise ValueError(f"need 0 < gamma < inf and R_ball > 0, got gamma={gamma}, R_ball={R_ball}")
    s = gamma / 2.0
    G0 = window.scaled_norm_squared(s)
    # |h_s(t)|^2 = s^{2N} h(s t)^2 and |s t| <= pi/2 on B_{pi/gamma}
    min_g = s ** (2 * N) * min_h_squared(window)
    alpha0_prime = (2.0 * math.pi) ** N * G0 / min_g
    return alpha0_prime, covering_factor(N, gamma, R_ball) * alpha0_prime


def _sup_window(window: RadialWindow, s: float, a: float, step: float = SUP_GRID_STEP) -> float:
    """sup over |t| <= a of (a^2 - t^2) |h_s(t)|^2, grid scan checked on a 10x finer grid."""
    N = window.dimension

    def phi(t: np.ndarray) -> np.ndarray:
        return (a * a - t * t) * (s ** N * fourier_h(window, s * t)) ** 2

    n = max(1, math.ceil(1.0 / step))
    coarse = float(np.max(phi(np.linspace(0.0, a, n + 1))))
    fine = float(np.max(phi(np.linspace(0.0, a, 10 * n + 1))))
    if fine > coarse * (1.0 + 1e-9):
        logger.debug(f"Window sup moved on the fine grid: {coarse:.12e} -> {fine:.12e}")
    return max(coarse, fine)


def alpha_j(geometry: GapGeometry, j: int, r: float, window: RadialWindow,
            mode: ConstantsMode = ConstantsMode.SHARP) -> float:
    """
    Lower constant of class j on B_{R_j + r}: alpha_j r sum_{K_j} |x_k|^2 <= int |x_j|^2.

    G = [(R_j + r)^2 + Laplace](H_s * H_s), s = gamma_j / 2, has G(0) = (2 R_j + r) r s^N
    because the first eigenvalue on B_s is R_j^2.
    """
    gamma_j = geometry.class_gammas[j - 1]
    if math.isinf(gamma_j):
        raise SingletonClassError(f"class {j} is a singleton: use singleton path")
    R_j = geometry.class_radii[j - 1]
    s = gamma_j / 2.0
    if mode is ConstantsMode.PAPER_UNIFORM:
        r_sup = max(r, geometry.critical_radius / (2 * geometry.m))
        g0_factor = 2.0 * R_j
    else:
        r_sup = r
        g0_factor = 2.0 * R_j + r
    N = window.dimension
    sup = _sup_window(window, s, R_j + r_sup)
    return (2.0 * math.pi) ** N * g0_factor * window.scaled_norm_squared(s) / sup


def singleton_alpha_j(geometry: GapGeometry, j: int, r: float, N: int) -> float:
    """A lone frequency on B_{R_j + r} has exactly V_{R_j + r} |x_k|^2 of mass."""
    return ball_volume(N, geometry.class_radii[j - 1] + r) / r


def class_alpha(geometry: GapGeometry, j: int, r: float, window: RadialWindow,
                mode: ConstantsMode = ConstantsMode.SHARP) -> float:
    if geometry.is_singleton(j):
        return singleton_alpha_j(geometry, j, r, window.dimension)
    return alpha_j(geometry, j, r, window, mode)


def alpha_j_prime(geometry: GapGeometry, j: int, r: float, alpha_j_val: float, alpha_m1: float,
                  alpha0: float, window: RadialWindow) -> float:
    """
    Lower constant for class j enlarged by one outside frequency, on B_{R_j + 2r}:
    alpha'_j r^5 sum_{K'_j} |x_k|^2 <= int |x|^2.
    """
    r_max = geometry.critical_radius / (2 * geometry.m)
    if not 0 < r <= r_max * (1.0 + RANGE_RTOL):
        raise HypothesisViolationError(f"r={r} outside (0, R0/(2m)] = (0, {r_max}]")
    N = window.dimension
    gamma = geometry.gamma
    core = alpha_j_val * alpha_m1 ** 2 * gamma ** 4
    volume = ball_volume(N, geometry.class_radii[j - 1] + 2.0 * r)
    D = 4.0 + (2.0 * core * r ** 5 + 8.0 * alpha0) / volume
    return core / D


def check_theorem_radius(R: float, R0: float) -> None:
    if not R0 > 0:
        raise HypothesisViolationError("critical radius is zero: the family needs two frequencies in one class")
    if R <= R0:
        raise HypothesisViolationError(f"R={R} <= R0={R0}: no lower estimate below the critical radius")
    if R > 2.0 * R0 * (1.0 + RANGE_RTOL):
        raise HypothesisViolationError(f"R={R} > 2 R0={2.0 * R0}: constants are only certified on (R0, 2 R0]")


def theorem_constants(pf: PartitionedFamily, R: float, mode: ConstantsMode = ConstantsMode.SHARP,
                      window: Optional[RadialWindow] = None) -> ConstantChain:
    """Run the whole chain for one radius and return c1, c2 and L(R) = c1 (R - R0)^{5m-4+2N}."""
    N = pf.dimension
    window = window or eigen_profile(N)
    geo = geometry(pf, window.mu)
    R0 = geo.critical_radius
    check_theorem_radius(R, R0)
    m = pf.m
    gamma = geo.gamma
    r = (R - R0) / (2 * m)

    alpha0_prime, alpha0 = alpha_zero(N, gamma, 2.0 * R0, window)
    if mode is ConstantsMode.PAPER_UNIFORM:
        alpha0_small = alpha0
    else:
        # the modulus sum is only integrated over B_r in the assembly
        _, alpha0_small = alpha_zero(N, gamma, r, window)

    alphas = tuple(class_alpha(geo, j, r, window, mode) for j in range(1, m + 1))
    alpha_m1 = alpha_m_plus_1(N, R0 * gamma / (2 * m))
    primes = tuple(
        alpha_j_prime(geo, j, r, alphas[j - 1], alpha_m1, alpha0, window) for j in range(1, m + 1)
    )

    # L1 bound of psi_{k,j} by Hoelder: ||psi||_1^2 <= V / c1' with c1' the lower Riesz constant
    own = [math.sqrt(ball_volume(N, geo.class_radii[j - 1] + r) / (alphas[j - 1] * r)) for j in range(1, m + 1)]
    other = [math.sqrt(ball_volume(N, geo.class_radii[j - 1] + 2 * r) / (primes[j - 1] * r ** 5))
             for j in range(1, m + 1)]
    class_p: Dict[int, float] = {}
    for jk in range(1, m + 1):
        product = own[jk - 1]
        for j in range(1, m + 1):
            if j != jk:
                product *= other[j - 1]
        class_p[jk] = product
    p_factors = tuple(class_p[pf.class_of[lbl]] for lbl in pf.family.labels)

    support = R0 + (2 * m - 1) * r
    if support > (R - r) * (1.0 + RANGE_RTOL):
        raise InternalConsistencyError(f"rho_k support radius {support} exceeds R - r = {R - r}")

    window_g0 = window.h_at_zero ** 2 * (r / 2.0) ** (2 * N)
    window_G0 = window.scaled_norm_squared(r / 2.0)
    p_max = max(p_factors)
    L = window_g0 ** 2 / (p_max ** 2 * window_G0 ** 2 * alpha0_small)
    e = exponent(m, N)

    chain = ConstantChain(
        R=float(R), R0=R0, m=m, dimension=N, gamma=gamma, mode=mode, r=r,
        alpha0_prime=alpha0_prime, alpha0=alpha0, alpha0_small=alpha0_small,
        alpha_j=alphas, alpha_m1=alpha_m1, alpha_j_prime=primes, p_factors=p_factors,
        window_g0=window_g0, window_G0=window_G0,
        L=L, c1=L / (R - R0) ** e, c2=alpha0, exponent=e,
    )
    logger.debug(f"Constant chain: {chain.summary()}")
    return chain


def assembly_lower_bound(chain: ConstantChain, p_factors: Tuple[float, ...]) -> float:
    """L for the same windows with other L1 bounds on the dual functions."""
    p_max = max(p_factors)
    if not math.isfinite(p_max):
        return 0.0
    return chain.window_g0 ** 2 / (p_max ** 2 * chain.window_G0 ** 2 * chain.alpha0_small)
