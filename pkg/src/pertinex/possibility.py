"""Evidence machinery over a finite frame.

Mass functions assign strictly positive weights summing to 1 to non-empty focal
subsets.  Belief is the subset-sum of masses, plausibility the intersection-sum;
a nested (consonant) mass function induces a possibility distribution whose
element-wise values equal the plausibility of the corresponding singletons.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

MASS_SUM_TOL = 1e-9


class MassFunctionError(ValueError):
    """The candidate focal list violates a mass-function constraint."""


@dataclass(frozen=True)
class Frame:
    elements: tuple[str, ...]

    def __post_init__(self):
        if len(self.elements) == 0:
            raise ValueError("frame must be non-empty")
        if len(set(self.elements)) != len(self.elements):
            raise ValueError("frame elements must be distinct")

    def __contains__(self, element: str) -> bool:
        return element in self.elements

    def as_set(self) -> frozenset[str]:
        return frozenset(self.elements)


@dataclass(frozen=True)
class MassFunction:
    frame: Frame
    focal: tuple[tuple[frozenset[str], float], ...]

    def masses(self) -> list[float]:
        return [m for _, m in self.focal]


@dataclass(frozen=True)
class PossibilityDistribution:
    frame: Frame
    pi: dict[str, float]


def validate_mass(
    candidate: list[tuple[frozenset[str] | set[str], float]], frame: Frame
) -> MassFunction:
    """Check the focal list constraints and return a validated MassFunction.

    Rejects: empty or out-of-frame subsets, duplicate subsets, non-positive
    masses, and mass totals off 1 by more than the tolerance.
    """
    seen: set[frozenset[str]] = set()
    focal: list[tuple[frozenset[str], float]] = []
    universe = frame.as_set()
    for subset, mass in candidate:
        s = frozenset(subset)
        if not s:
            raise MassFunctionError("focal subset is empty")
        if not s <= universe:
            raise MassFunctionError(f"focal subset {sorted(s)} not contained in the frame")
        if s in seen:
            raise MassFunctionError(f"duplicate focal subset {sorted(s)}")
        if mass <= 0.0:
            raise MassFunctionError(f"non-positive mass {mass} for subset {sorted(s)}")
        seen.add(s)
        focal.append((s, float(mass)))
    total = math.fsum(m for _, m in focal)
    if abs(total - 1.0) > MASS_SUM_TOL:
        raise MassFunctionError(f"masses sum to {total!r}, deviating from 1 by {total - 1.0!r}")
    return MassFunction(frame=frame, focal=tuple(focal))


def _check_subset(frame: Frame, a: frozenset[str] | set[str]) -> frozenset[str]:
    s = frozenset(a)
    if not s <= frame.as_set():
        raise ValueError(f"{sorted(s)} is not a subset of the frame")
    return s


def belief(mf: MassFunction, a: frozenset[str] | set[str]) -> float:
    """Sum of masses of focal sets contained in `a`."""
    s = _check_subset(mf.frame, a)
    return math.fsum(m for e, m in mf.focal if e <= s)


def plausibility(mf: MassFunction, a: frozenset[str] | set[str]) -> float:
    """Sum of masses of focal sets intersecting `a`."""
    s = _check_subset(mf.frame, a)
    return math.fsum(m for e, m in mf.focal if e & s)


def is_nested(mf: MassFunction) -> bool:
    """True iff the focal sets form a chain under strict inclusion."""
    ordered = sorted((e for e, _ in mf.focal), key=len)
    for small, big in zip(ordered, ordered[1:]):
        if len(small) == len(big) or not small < big:
            return False
    return True


class NotNestedError(ValueError):
    """Possibility extraction requires a nested (consonant) mass function."""


def to_possibility_distribution(mf: MassFunction) -> PossibilityDistribution:
    """Derive the element-wise possibility values of a nested mass function.

    pi(w) is the tail sum of masses from the innermost focal set containing w
    outward, which for a chain equals the plausibility of the singleton {w};
    elements outside the largest focal set get 0.
    """
    if not is_nested(mf):
        raise NotNestedError("focal sets do not form an inclusion chain")
    pi = {
        w: math.fsum(m for e, m in mf.focal if w in e)
        for w in mf.frame.elements
    }
    return PossibilityDistribution(frame=mf.frame, pi=pi)


def possibility_of(dist: PossibilityDistribution, a: frozenset[str] | set[str]) -> float:
    """max of pi over `a`; 0 for the empty set."""
    s = _check_subset(dist.frame, a)
    return max((dist.pi[w] for w in s), default=0.0)


def necessity_of(dist: PossibilityDistribution, a: frozenset[str] | set[str]) -> float:
    """Dual measure: 1 - possibility of the complement."""
    s = _check_subset(dist.frame, a)
    return 1.0 - possibility_of(dist, dist.frame.as_set() - s)
