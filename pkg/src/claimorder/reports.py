"""Shared result container for grid-based numeric condition checks."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class ConditionReport:
    """Outcome of checking one analytic condition on a finite grid.

    Attributes
    ----------
    passed : bool
        True iff ``worst_violation <= tolerance``.
    worst_violation : float
        Largest observed violation magnitude (0 when the condition holds
        everywhere on the grid).
    witness : str
        Human-readable location of the worst violation, or a short note
        when there is none.
    grid_descriptor : str
        Description of the grid the check ran on, for reproducibility.
    tolerance : float
        Violation threshold the verdict was taken against.
    """

    passed: bool
    worst_violation: float
    witness: str
    grid_descriptor: str
    tolerance: float

    def __post_init__(self):
        if self.worst_violation < 0:
            raise ValueError("worst_violation must be non-negative")
        if self.passed != (self.worst_violation <= self.tolerance):
            raise ValueError("passed flag inconsistent with violation/tolerance")

    @classmethod
    def from_violation(
        cls, worst: float, witness: str, grid: str, tol: float
    ) -> "ConditionReport":
        worst = max(0.0, float(worst))
        return cls(worst <= tol, worst, witness, grid, tol)

    def one_line(self) -> str:
        if self.passed:
            return f"pass (worst violation {self.worst_violation:.3g})"
        return f"FAIL (violation {self.worst_violation:.3g} at {self.witness})"
