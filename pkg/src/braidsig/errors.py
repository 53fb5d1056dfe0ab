"""Exception types shared across the package."""


class BraidSigError(Exception):
    """Base class for all library-specific errors."""


class PrecisionExhausted(BraidSigError):
    """Eigenvalue sign separation failed at the precision cap.

    Raised when an eigenvalue of a Hermitian form sits inside the ambiguous
    band (tol, 10*tol] relative to the matrix scale and either no exact
    rebuilder is available or the escalation ladder reached its cap.  For
    signature computations this signals an evaluation point on (or numerically
    indistinguishable from) a signature wall.
    """


class NotInSum(BraidSigError):
    """A vector expected to lie in U + V does not, within tolerance."""


class SubspaceNotInvariant(BraidSigError):
    """The reduced subspace is not preserved by an unreduced matrix.

    This is a convention bug, never a legal runtime state.
    """


class EvaluationAtOne(BraidSigError):
    """A torus coordinate equals 1 for a color where the form is undefined."""


class NotEndomorphism(BraidSigError):
    """A braid word whose top coloring differs from its bottom coloring."""


class ColoringMismatch(BraidSigError):
    """Attempt to compose braid words whose colorings do not match."""


class UnsupportedColoring(BraidSigError):
    """Seifert-matrix oracle invoked outside the 1-colored positive case."""


class InvalidCComplex(BraidSigError):
    """C-complex matrix family violating the transpose symmetry."""


class OutsideGuarantee(BraidSigError):
    """Torus point outside the set where the signature algorithm is proven.

    The coordinate orders must be > 1 and pairwise coprime; other points are
    refused by default and only computed under an explicit force flag.
    """
