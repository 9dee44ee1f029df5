from typing import Hashable, Optional, Tuple

import numpy as np


class InghamError(Exception):
    """Base class for every error raised by the library."""


class FamilyValidationError(InghamError, ValueError):
    pass


class DuplicateFrequencyError(FamilyValidationError):
    """Two labels carry the same frequency vector (gap would be zero)."""

    def __init__(self, pair: Tuple[Hashable, Hashable]):
        self.pair = pair
        super().__init__(f"duplicate frequencies for labels {pair[0]!r} and {pair[1]!r}")


class PartitionError(FamilyValidationError):
    pass


class FamilyTooSmallError(InghamError, ValueError):
    pass


class UnsupportedOrderError(InghamError, ValueError):
    pass


class OutOfRangeError(InghamError, ValueError):
    pass


class HypothesisViolationError(InghamError, ValueError):
    """Radius outside (R0, 2 R0]."""


class SingletonClassError(InghamError, ValueError):
    pass


class InternalConsistencyError(InghamError, ArithmeticError):
    pass


class CertificationError(InghamError, ArithmeticError):
    pass


class ConvergenceError(InghamError, ArithmeticError):
    def __init__(self, message: str, matrix: Optional[np.ndarray] = None):
        self.matrix = matrix
        if matrix is not None:
            message = f"{message}\n{np.array2string(matrix, precision=6, max_line_width=160)}"
        super().__init__(message)


class ConditioningError(InghamError, ArithmeticError):
    def __init__(self, lambda_min: float, radius: float, class_index: Optional[int] = None):
        self.lambda_min = lambda_min
        self.radius = radius
        self.class_index = class_index
        where = f" (class {class_index})" if class_index is not None else ""
        super().__init__(
            f"near-singular Gram over radius {radius:.6g}{where}: lambda_min={lambda_min:.3e}"
        )


class UnknownLabelError(InghamError, KeyError):
    def __str__(self) -> str:
        return f"unknown label {self.args[0]!r}"
