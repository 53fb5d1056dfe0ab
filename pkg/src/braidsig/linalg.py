"""Complex Hermitian/skew-Hermitian form calculus with toleranced ranks.

All rank decisions (echelon pivots, nullspaces, signature nullity) share one
tolerance, relative to the largest entry of the matrix at hand.  Forms follow
the linear-first convention xi(x, y) = x^T Xi conj(y); a matrix A preserves a
form Xi iff A^T Xi conj(A) = Xi.

Signatures are computed from eigenvalue sign counts.  Eigenvalues falling in
the ambiguous band (tol, 10*tol] relative to the scale trigger a re-run at
doubled precision via an exact rebuilder when one is supplied, up to a hard
cap, after which PrecisionExhausted is raised.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

import mpmath
import numpy as np

from .config import DEFAULT_PRECISION, DEFAULT_TOL, PRECISION_CAP
from .errors import NotInSum, PrecisionExhausted


@dataclass(frozen=True)
class Inertia:
    pos: int
    neg: int
    null: int

    @property
    def signature(self) -> int:
        return self.pos - self.neg

    @property
    def dim(self) -> int:
        return self.pos + self.neg + self.null


def _scale(a: np.ndarray) -> float:
    return max(1.0, float(np.max(np.abs(a))) if a.size else 0.0)


def form_value(xi: np.ndarray, x: np.ndarray, y: np.ndarray) -> complex:
    """xi(x, y) = x^T Xi conj(y), linear in x and conjugate-linear in y."""
    return complex(x @ xi @ np.conj(y))


def gram(xi: np.ndarray, vectors: np.ndarray) -> np.ndarray:
    """Gram matrix G[i, j] = xi(v_i, v_j) for the columns v_i of ``vectors``."""
    return vectors.T @ xi @ np.conj(vectors)


def is_hermitian(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return bool(np.max(np.abs(m - np.conj(m.T)), initial=0.0) <= 10 * tol * _scale(m))


def is_skew_hermitian(m: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    return bool(np.max(np.abs(m + np.conj(m.T)), initial=0.0) <= 10 * tol * _scale(m))


def preserves_form(a: np.ndarray, xi: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """Form preservation a^T Xi conj(a) = Xi, i.e. unitarity for the form."""
    return bool(
        np.max(np.abs(a.T @ xi @ np.conj(a) - xi), initial=0.0)
        <= 10 * tol * _scale(xi)
    )


# ---------------------------------------------------------------------------
# signatures
# ---------------------------------------------------------------------------


def _classify(eigs, scale, tol):
    """Return (pos, neg, null) or None when an eigenvalue is ambiguous."""
    pos = neg = null = 0
    lo, hi = tol * scale, 10 * tol * scale
    for lam in eigs:
        mag = abs(lam)
        if mag <= lo:
            null += 1
        elif mag <= hi:
            return None
        elif lam > 0:
            pos += 1
        else:
            neg += 1
    return pos, neg, null


def hermitian_signature(
    m: np.ndarray,
    tol: float = DEFAULT_TOL,
    rebuild: Optional[Callable[[int], object]] = None,
    start_prec: int = DEFAULT_PRECISION,
) -> Inertia:
    """Inertia (pos, neg, null) of a Hermitian matrix.

    ``rebuild(bits)`` must return the same matrix recomputed from exact data
    at ``bits`` mantissa bits (any nested-sequence layout); it drives the
    precision-escalation ladder when the float64 pass is ambiguous.
    """
    m = np.asarray(m, dtype=complex)
    if m.size == 0:
        return Inertia(0, 0, 0)
    if not is_hermitian(m, tol):
        raise ValueError("matrix is not Hermitian within tolerance")
    m = (m + np.conj(m.T)) / 2
    scale = _scale(m)
    verdict = _classify(np.linalg.eigvalsh(m), scale, tol)
    if verdict is not None:
        return Inertia(*verdict)
    if rebuild is None:
        raise PrecisionExhausted(
            "ambiguous eigenvalue magnitude and no exact rebuilder available"
        )
    bits = start_prec
    while bits <= PRECISION_CAP:
        with mpmath.workprec(bits):
            mm = mpmath.matrix([[mpmath.mpc(x) for x in row] for row in rebuild(bits)])
            mm = (mm + mm.transpose_conj()) / 2
            eigs = [mpmath.re(e) for e in mpmath.eighe(mm, eigvals_only=True)]
            verdict = _classify(eigs, scale, tol)
        if verdict is not None:
            return Inertia(*verdict)
        bits *= 2
    raise PrecisionExhausted(
        f"eigenvalue sign separation failed up to {PRECISION_CAP} bits"
    )


# ---------------------------------------------------------------------------
# toleranced elimination
# ---------------------------------------------------------------------------


def column_echelon(a: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Reduced column-echelon form with unit pivots; columns span col(a).

    The output is the canonical representative of the column span: two
    matrices have the same span iff their echelon forms agree entrywise
    (within tolerance).
    """
    a = np.array(a, dtype=complex)
    if a.ndim != 2:
        raise ValueError("expected a matrix")
    n, m = a.shape
    threshold = tol * _scale(a)
    col = 0
    for row in range(n):
        if col >= m:
            break
        pivot = col + int(np.argmax(np.abs(a[row, col:])))
        if abs(a[row, pivot]) <= threshold:
            a[row, col:] = 0  # noise below the rank threshold
            continue
        a[:, [col, pivot]] = a[:, [pivot, col]]
        a[:, col] /= a[row, col]
        for k in range(m):
            if k != col:
                a[:, k] -= a[row, k] * a[:, col]
        col += 1
    return np.ascontiguousarray(a[:, :col])


def matrix_rank(a: np.ndarray, tol: float = DEFAULT_TOL) -> int:
    return column_echelon(a, tol).shape[1]


def nullspace(a: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Canonical basis (columns) of the right kernel of ``a``."""
    a = np.asarray(a, dtype=complex)
    n, m = a.shape
    # ker(a) = orthogonal complement trick avoided: use row reduction of a
    # padded with the identity and read off the columns that reduce to zero.
    work = np.vstack([a, np.eye(m, dtype=complex)])
    threshold = tol * _scale(a)
    col = 0
    for row in range(n):
        if col >= m:
            break
        pivot = col + int(np.argmax(np.abs(work[row, col:])))
        if abs(work[row, pivot]) <= threshold:
            work[row, col:] = 0
            continue
        work[:, [col, pivot]] = work[:, [pivot, col]]
        work[:, col] /= work[row, col]
        for k in range(m):
            if k != col:
                work[:, k] -= work[row, k] * work[:, col]
        col += 1
    kernel = work[n:, col:]
    return column_echelon(kernel, tol) if kernel.size else kernel.reshape(m, 0)


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------


class Subspace:
    """Subspace of C^n held as a canonical reduced column-echelon basis."""

    __slots__ = ("ambient_dim", "basis")

    def __init__(self, ambient_dim: int, basis: np.ndarray, *, canonical=False):
        basis = np.asarray(basis, dtype=complex).reshape(ambient_dim, -1)
        self.ambient_dim = int(ambient_dim)
        self.basis = basis if canonical else column_echelon(basis)

    @classmethod
    def span(cls, vectors, ambient_dim=None, tol: float = DEFAULT_TOL) -> "Subspace":
        m = np.asarray(vectors, dtype=complex)
        if m.ndim == 1:
            m = m.reshape(-1, 1)
        n = ambient_dim if ambient_dim is not None else m.shape[0]
        return cls(n, column_echelon(m.reshape(n, -1), tol), canonical=True)

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, np.zeros((ambient_dim, 0)), canonical=True)

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, np.eye(ambient_dim), canonical=True)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def contains(self, vec, tol: float = DEFAULT_TOL) -> bool:
        vec = np.asarray(vec, dtype=complex).reshape(self.ambient_dim)
        if self.dim == 0:
            return bool(np.max(np.abs(vec), initial=0.0) <= tol * max(1.0, 1.0))
        coeff, *_ = np.linalg.lstsq(self.basis, vec, rcond=None)
        resid = self.basis @ coeff - vec
        norm = max(1.0, float(np.linalg.norm(vec)))
        return bool(np.linalg.norm(resid) <= tol * norm)

    def equals(self, other: "Subspace", tol: float = DEFAULT_TOL) -> bool:
        if self.ambient_dim != other.ambient_dim or self.dim != other.dim:
            return False
        return bool(
            np.max(np.abs(self.basis - other.basis), initial=0.0) <= 100 * tol
        )

    def __repr__(self):
        return f"Subspace(dim {self.dim} of C^{self.ambient_dim})"


def _check_ambient(u: Subspace, v: Subspace):
    if u.ambient_dim != v.ambient_dim:
        raise ValueError(
            f"ambient dimensions differ: {u.ambient_dim} vs {v.ambient_dim}"
        )


def subspace_sum(u: Subspace, v: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    _check_ambient(u, v)
    return Subspace.span(
        np.hstack([u.basis, v.basis]), ambient_dim=u.ambient_dim, tol=tol
    )


def subspace_intersect(u: Subspace, v: Subspace, tol: float = DEFAULT_TOL) -> Subspace:
    _check_ambient(u, v)
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(u.ambient_dim)
    stacked = np.hstack([u.basis, -v.basis])
    ker = nullspace(stacked, tol)
    vectors = u.basis @ ker[: u.dim, :]
    return Subspace.span(vectors, ambient_dim=u.ambient_dim, tol=tol)


def decompose(a, u: Subspace, v: Subspace, tol: float = DEFAULT_TOL):
    """Split a = a1 + a2 with a1 in U, a2 in V (least-norm coefficients).

    Raises NotInSum when a does not lie in U + V within tolerance.  Any valid
    split is acceptable to callers; the least-norm one is deterministic.
    """
    _check_ambient(u, v)
    a = np.asarray(a, dtype=complex).reshape(u.ambient_dim)
    combined = np.hstack([u.basis, v.basis])
    if combined.shape[1] == 0:
        if np.max(np.abs(a), initial=0.0) <= tol:
            return np.zeros_like(a), np.zeros_like(a)
        raise NotInSum("vector outside the zero subspace")
    coeff, *_ = np.linalg.lstsq(combined, a, rcond=None)
    resid = combined @ coeff - a
    if np.linalg.norm(resid) > tol * max(1.0, float(np.linalg.norm(a))):
        raise NotInSum(
            f"residual {np.linalg.norm(resid):.3e} exceeds tolerance"
        )
    a1 = u.basis @ coeff[: u.dim]
    a2 = v.basis @ coeff[u.dim :]
    return a1, a2


def is_isotropic(l: Subspace, xi: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    """True iff the form vanishes identically on the subspace."""
    xi = np.asarray(xi, dtype=complex)
    if xi.shape != (l.ambient_dim, l.ambient_dim):
        raise ValueError("form dimension does not match the ambient space")
    if l.dim == 0:
        return True
    g = gram(xi, l.basis)
    return bool(np.max(np.abs(g), initial=0.0) <= tol * _scale(xi) * 10)
