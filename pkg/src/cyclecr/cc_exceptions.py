#!/usr/bin/env python3

from typing import Optional, Sequence


class CycleError(ValueError):
    pass


class ZeroVectorError(CycleError):
    pass


class AllZeroError(CycleError):
    pass


class BothZeroPolynomialsError(CycleError):
    pass


class DegenerateLineError(CycleError):
    pass


class IsLineError(CycleError):
    pass


class NotAPointError(CycleError):
    pass


class IsotropicCycleError(CycleError):
    pass


class NegativeRadicandError(CycleError):
    pass


class StructureLostError(CycleError):
    pass


class DegenerateMirrorError(CycleError):
    pass


class SingularMatrixError(CycleError):
    pass


class UndefinedTermError(CycleError):
    pass


class NotIncidentError(CycleError):
    pass


class DegenerateConstraintsError(CycleError):
    pass


class DegeneratePencilError(CycleError):
    pass


class DegenerateRankError(CycleError):
    def __init__(self, msg: str, basis: Optional[Sequence] = None) -> None:
        super().__init__(msg)
        # solution basis of the rank-deficient system, for diagnostics
        self.basis = list(basis) if basis is not None else []


class ConstructionFailedError(CycleError):
    def __init__(self, step: str, reason: str) -> None:
        super().__init__(f"construction failed at step '{step}': {reason}")
        self.step = step
        self.reason = reason


class LogOfZeroError(CycleError):
    pass


class PreconditionError(CycleError):
    pass


class InvalidCycleDocumentError(ValueError):
    pass


class InvalidConfigError(ValueError):
    pass
