"""
Domain Errors
=============
Exception hierarchy shared by the geometry, path, oracle and CLI layers.
"""

from typing import Optional


class PolylinkError(Exception):
    """Base class for every domain failure."""


# =============================================================================
# POLYGON VALIDATION
# =============================================================================

class ValidationError(PolylinkError):
    """Vertex list does not describe a simple closed polygon."""


class TooFewVertices(ValidationError):
    def __init__(self, n: int):
        self.n = n
        super().__init__(f"a polygon needs at least 3 vertices, got {n}")


class DuplicateVertex(ValidationError):
    def __init__(self, i: int, j: int):
        self.i, self.j = i, j
        super().__init__(f"vertices {i} and {j} coincide")


class EdgeCrossing(ValidationError):
    def __init__(self, i: int, j: int):
        self.i, self.j = i, j
        super().__init__(f"edges {i} and {j} intersect")


class CollinearOverlap(ValidationError):
    def __init__(self, i: int, j: int):
        self.i, self.j = i, j
        super().__init__(f"edges {i} and {j} overlap along a segment")


# =============================================================================
# INPUT / CONTRACT ERRORS
# =============================================================================

class ParseError(PolylinkError):
    def __init__(self, line: int, message: str):
        self.line = line
        super().__init__(f"line {line}: {message}")


class PreconditionViolated(PolylinkError):
    """An operation was called outside its documented precondition."""


class NotInS0(PreconditionViolated):
    """Raindrop ray from the point meets P at a vertex, or the point lies on P."""


class OnBoundaryInput(PreconditionViolated):
    def __init__(self, label: str, feature: Optional[str] = None):
        self.label = label
        detail = f" ({feature})" if feature else ""
        super().__init__(f"point {label} lies on the polygon{detail}")


class ComponentMismatch(PreconditionViolated):
    def __init__(self, first: str, second: str):
        self.first, self.second = first, second
        super().__init__(f"points lie in different components: {first} vs {second}")


# =============================================================================
# SEARCH / ORACLE ERRORS
# =============================================================================

class HaltingCapExceeded(PolylinkError):
    """A verified halving or doubling search ran past its cap."""

    def __init__(self, what: str, cap: int):
        self.what, self.cap = what, cap
        super().__init__(f"{what}: no verified parameter after {cap} steps")


class ConstructionFailed(PolylinkError):
    """A path construction produced no certificate within its bound."""


class Unreachable(PolylinkError):
    """Oracle search never reached the target point."""


class OracleTooLarge(PolylinkError):
    def __init__(self, n: int, max_n: int):
        self.n, self.max_n = n, max_n
        super().__init__(f"oracle refuses n={n} (limit {max_n}); raise --max-n to override")


class VerificationFailed(PolylinkError):
    def __init__(self, label: str, pair: tuple, claimed: int, actual: int):
        self.label, self.pair = label, pair
        self.claimed, self.actual = claimed, actual
        super().__init__(f"{label} witness {pair}: claimed {claimed}, oracle found {actual}")
