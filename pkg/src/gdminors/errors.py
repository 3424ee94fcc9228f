"""Exception and warning types shared across the package."""


class GDMinorsError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(GDMinorsError, ValueError):
    """Ladder data violates the shape constraints.

    Carries every violated constraint, not just the first one found.  Each
    violation is a "Code: message" string; the bare codes are available via
    the ``codes`` property.
    """

    def __init__(self, violations):
        self.violations = list(violations)
        super().__init__("; ".join(self.violations))

    @property
    def codes(self):
        return [v.split(":", 1)[0] for v in self.violations]


class CellIsZero(GDMinorsError, ValueError):
    """A referenced cell lies in a ladder of zeros (or outside the matrix)."""


class ResultDegenerate(GDMinorsError, ValueError):
    """Enlarging the ladders would zero a full row or column."""


class UniverseTooLarge(GDMinorsError, RuntimeError):
    """The cell universe exceeds the configured enumeration budget."""


class BudgetExceeded(GDMinorsError, RuntimeError):
    """A configured work budget (faces, minors, paths, vertices) was exceeded."""


class NotMaximalKStair(GDMinorsError, ValueError):
    """Decomposition requested for a set that is not a maximal k-stair."""


class BadIndex(GDMinorsError, IndexError):
    """Row/column index lists for a minor are malformed."""


class ZeroPolynomial(GDMinorsError, ValueError):
    """The zero polynomial has no leading term."""


class NotAFace(GDMinorsError, ValueError):
    """Link requested at a vertex set that is not a face of the complex."""


class VertexClash(GDMinorsError, ValueError):
    """Join requested for complexes with overlapping vertex sets."""


class NotTriangleShape(GDMinorsError, ValueError):
    """The ladders are not triangles nor contained in the required triangles."""


class RecursionBudget(GDMinorsError, RuntimeError):
    """Certificate construction exceeded its node budget."""


class InvalidParameters(GDMinorsError, ValueError):
    """Numeric parameters are out of range for the requested computation."""


class ImpureWarning(UserWarning):
    """The complex is impure; multiplicity counts only top-dimension facets."""

    def __init__(self, top_count, total_count):
        self.top_count = top_count
        self.total_count = total_count
        super().__init__(
            f"impure complex: {top_count} top-dimension facets out of {total_count}"
        )
