"""Linear membership curves and their inverses.

Only the two straight-line shapes exist: falling (full membership at the
left edge, none at the right) and rising (the mirror).  Both are strictly
monotone inside their interval, so a degree can be mapped back to the unique
point that produced it -- the step that turns a rule's fire strength into a
crisp consequent value.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from .errors import DefinitionError, InputDomainError


class Shape(str, Enum):
    FALLING = "falling"
    RISING = "rising"


@dataclass(frozen=True)
class MembershipFunction:
    """A straight-line membership curve over the closed interval [x_min, x_max].

    Outside the interval the curve saturates at 0 or 1; the exact boundary
    points take the value that keeps the curve continuous.
    """

    shape: Shape
    x_min: float
    x_max: float

    def __post_init__(self):
        if not (math.isfinite(self.x_min) and math.isfinite(self.x_max)):
            raise DefinitionError(
                f"membership bounds must be finite, got [{self.x_min}, {self.x_max}]"
            )
        if not self.x_min < self.x_max:
            raise DefinitionError(
                f"membership needs x_min < x_max, got [{self.x_min}, {self.x_max}]"
            )

    def evaluate(self, x: float) -> float:
        """Degree of membership of ``x``, always within [0, 1]."""
        if not math.isfinite(x):
            raise InputDomainError(f"cannot evaluate membership at x={x!r}")
        if x <= self.x_min:
            return 1.0 if self.shape is Shape.FALLING else 0.0
        if x >= self.x_max:
            return 0.0 if self.shape is Shape.FALLING else 1.0
        run = self.x_max - self.x_min
        if self.shape is Shape.FALLING:
            degree = (self.x_max - x) / run
        else:
            degree = (x - self.x_min) / run
        # keep the [0, 1] contract airtight against rounding at the edges
        return min(1.0, max(0.0, degree))

    def invert(self, alpha: float) -> float:
        """The unique x in [x_min, x_max] whose membership equals ``alpha``.

        Defined for the full closed range of degrees: 0 and 1 map to the
        saturating endpoints even though the forward curve is flat there.
        """
        if not (math.isfinite(alpha) and 0.0 <= alpha <= 1.0):
            raise InputDomainError(f"degree must be in [0, 1], got {alpha!r}")
        run = self.x_max - self.x_min
        if self.shape is Shape.RISING:
            x = self.x_min + alpha * run
        else:
            x = self.x_max - alpha * run
        return min(self.x_max, max(self.x_min, x))


def falling(x_min: float, x_max: float) -> MembershipFunction:
    return MembershipFunction(Shape.FALLING, x_min, x_max)


def rising(x_min: float, x_max: float) -> MembershipFunction:
    return MembershipFunction(Shape.RISING, x_min, x_max)
