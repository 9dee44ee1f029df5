# ingham/quadrature.py
from functools import lru_cache
from typing import Callable, Tuple
import logging

import numpy as np
from numpy.polynomial.legendre import leggauss

logger = logging.getLogger(__name__)

DEFAULT_ORDER = 32


@lru_cache(maxsize=16)
def gauss_legendre_rule(order: int = DEFAULT_ORDER) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights on [-1, 1]."""
    nodes, weights = leggauss(order)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def panel_nodes(a: float, b: float, panels: int, order: int = DEFAULT_ORDER) -> Tuple[np.ndarray, np.ndarray]:
    """Nodes and weights of the composite rule with `panels` equal panels on [a, b]."""
    nodes, weights = gauss_legendre_rule(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[:-1] + edges[1:])
    x = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    w = (half[:, None] * weights[None, :]).ravel()
    return x, w


def composite_gauss_legendre(f: Callable[[np.ndarray], np.ndarray], a: float, b: float,
                             panels: int = 1, order: int = DEFAULT_ORDER) -> np.ndarray:
    """
    Integrate f over [a, b]. f receives the node vector and may return
    shape (..., n_nodes); integration runs along the last axis.
    """
    x, w = panel_nodes(a, b, panels, order)
    return np.asarray(f(x)) @ w


def adaptive_gauss_legendre(f: Callable[[np.ndarray], np.ndarray], a: float, b: float,
                            tol: float = 1e-10, panels: int = 1, order: int = DEFAULT_ORDER,
                            max_doublings: int = 10) -> np.ndarray:
    """
    Composite Gauss-Legendre with panel doubling until two successive
    estimates agree to `tol` (absolute, max over the output).
    """
    current = composite_gauss_legendre(f, a, b, panels, order)
    change = np.inf
    for _ in range(max_doublings):
        panels *= 2
        previous, current = current, composite_gauss_legendre(f, a, b, panels, order)
        change = float(np.max(np.abs(current - previous)))
        if change <= tol:
            return current
    logger.warning(f"Quadrature on [{a}, {b}] stopped at {panels} panels, last change {change:.2e}")
    return current
