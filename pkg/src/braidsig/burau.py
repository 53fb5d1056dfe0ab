"""The colored Burau/Gassner representation and its skew-Hermitian form.

Unreduced matrices.  Each strand carries the variable tau_j = t_{|c_j|}^{sgn}
of its signed color.  The letter sigma_i^{+1} over a level whose coloring has
variables (r, s) at positions (i, i+1) contributes the block

        [[1 - r, s],
         [1,     0]]

and sigma_i^{-1} its inverse taken at the swapped level,

        [[0,      1],
         [r^{-1}, r^{-1}(s - 1)]].

Products run left to right in word order.  The resulting matrix U(w) sends
the u-vector of the top coloring (u_j = tau_j - 1) to the u-vector of the
bottom coloring; this is the chain-level boundary identity used as the
exactness check throughout.

Reduced matrices.  The preferred (n-1)-dimensional basis is described in
cover.basis_loops; reduce() restricts U(w)^T to its span, mapping the bottom
basis into the top one.  Single letters reproduce the classical reduced
blocks, e.g. B(sigma_1) = [[-t^{e_2}, 1], [0, 1]] (+) identity.  The
restriction is anti-multiplicative in word order, so the representation used
for cocycle computations is gassner_matrix(w) = restriction of the reversed
word, a genuine homomorphism: B(w1 w2) = B(w1) B(w2), B(reflect w) = B(w)^-1.
Both versions agree on single letters over a constant coloring.  The matrices
act on columns and satisfy B^T Xi conj(B) = Xi for Xi = xi_form(c).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .braids import BraidWord, Coloring
from .cover import (
    basis_coefficients,
    evaluate_form,
    strand_variable,
    symbolic_form,
)
from .errors import EvaluationAtOne, SubspaceNotInvariant
from .laurent import LaurentPoly, TorusPoint


# ---------------------------------------------------------------------------
# unreduced matrices
# ---------------------------------------------------------------------------


def _sym_letter_block(level: Coloring, i: int, e: int):
    """The n x n unreduced matrix of sigma_i^e over the given level coloring."""
    n = level.n
    mu = level.mu
    one = LaurentPoly.one(mu)
    zero = LaurentPoly.zero(mu)
    m = [[one if a == b else zero for b in range(n)] for a in range(n)]
    r = strand_variable(level, i)
    s = strand_variable(level, i + 1)
    if e > 0:
        m[i - 1][i - 1] = one - r
        m[i - 1][i] = s
        m[i][i - 1] = one
        m[i][i] = zero
    else:
        rinv = r ** -1
        m[i - 1][i - 1] = zero
        m[i - 1][i] = one
        m[i][i - 1] = rinv
        m[i][i] = rinv * s - rinv
    return m


def _sym_matmul(a, b, mu):
    n = len(a)
    zero = LaurentPoly.zero(mu)
    out = [[zero for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for k in range(n):
            entry = a[i][k]
            if entry.is_zero():
                continue
            for j in range(n):
                if not b[k][j].is_zero():
                    out[i][j] = out[i][j] + entry * b[k][j]
    return out


@dataclass(frozen=True)
class UnreducedRep:
    bottom: Coloring
    top: Coloring
    matrix: tuple  # n x n tuple-of-tuples of LaurentPoly

    @property
    def coloring(self) -> Coloring:
        return self.bottom

    @property
    def n(self) -> int:
        return self.bottom.n


def unreduced_burau(word: BraidWord) -> UnreducedRep:
    """Symbolic unreduced matrix of the word over the Laurent ring."""
    mu = word.bottom.mu
    n = word.n
    one = LaurentPoly.one(mu)
    zero = LaurentPoly.zero(mu)
    out = [[one if a == b else zero for b in range(n)] for a in range(n)]
    for (i, e), level in zip(word.letters, word.levels()):
        out = _sym_matmul(out, _sym_letter_block(level, i, e), mu)
    return UnreducedRep(word.bottom, word.top(), tuple(tuple(r) for r in out))


def strand_values(level: Coloring, point: TorusPoint):
    """Evaluated strand variables tau_j(omega) along a level coloring."""
    return [
        point.coordinate_power(abs(c), 1 if c > 0 else -1) for c in level.entries
    ]


def _num_letter_block(level: Coloring, i: int, e: int, point: TorusPoint):
    n = level.n
    m = np.eye(n, dtype=complex)
    vals = strand_values(level, point)
    r, s = vals[i - 1], vals[i]
    if e > 0:
        m[i - 1, i - 1] = 1 - r
        m[i - 1, i] = s
        m[i, i - 1] = 1
        m[i, i] = 0
    else:
        m[i - 1, i - 1] = 0
        m[i - 1, i] = 1
        m[i, i - 1] = 1 / r
        m[i, i] = (s - 1) / r
    return m


def unreduced_at(word: BraidWord, point: TorusPoint) -> np.ndarray:
    """Unreduced matrix with every variable evaluated at the torus point."""
    out = np.eye(word.n, dtype=complex)
    for (i, e), level in zip(word.letters, word.levels()):
        out = out @ _num_letter_block(level, i, e, point)
    return out


# ---------------------------------------------------------------------------
# restriction to the preferred basis
# ---------------------------------------------------------------------------


def evaluated_basis(coloring: Coloring, point: TorusPoint) -> np.ndarray:
    """The (n x n-1) matrix whose columns are the preferred basis vectors."""
    coeffs = basis_coefficients(coloring)
    n = coloring.n
    out = np.zeros((n, max(n - 1, 0)), dtype=complex)
    for j in range(n - 1):
        for r in range(n):
            out[r, j] = coeffs[j][r].evaluate(point)
    return out


def restrict_to_basis(a: np.ndarray, src: np.ndarray, dst: np.ndarray,
                      tol: float = 1e-9) -> np.ndarray:
    """Solve a @ src = dst @ R for R, exploiting the staircase shape of dst.

    The basis matrices have exactly two nonzero entries per column, on rows
    j and j+1, so R comes out of a forward substitution; the leftover last row
    is the invariance residual.
    """
    n, k = dst.shape
    y = a @ src
    if k == 0:
        return np.zeros((0, 0), dtype=complex)
    r = np.zeros((k, k), dtype=complex)
    scale = max(1.0, float(np.max(np.abs(y))) if y.size else 0.0)
    for col in range(k):
        acc = np.zeros(k, dtype=complex)
        for row in range(k):
            val = y[row, col]
            if row:
                val -= dst[row, row - 1] * acc[row - 1]
            acc[row] = val / dst[row, row]
        residual = y[n - 1, col] - dst[n - 1, k - 1] * acc[k - 1]
        if abs(residual) > tol * scale:
            raise SubspaceNotInvariant(
                f"restriction residual {abs(residual):.3e} at column {col}"
            )
        r[:, col] = acc
    return r


@dataclass(frozen=True)
class ReducedRep:
    bottom: Coloring
    top: Coloring
    point: TorusPoint | None  # None marks the symbolic one-variable case
    matrix: object  # ndarray, or tuple-of-tuples of LaurentPoly


def reduce(word: BraidWord, point: TorusPoint | None = None,
           tol: float = 1e-9) -> ReducedRep:
    """Restrict the unreduced matrix of the word to the preferred bases.

    Maps the bottom basis into the span of the top basis; raises
    SubspaceNotInvariant if that span is not preserved (a convention bug).
    With point=None (single color only) the matrix is exact over the Laurent
    ring.  Anti-multiplicative in word order; see gassner_matrix.
    """
    if point is None:
        if word.bottom.mu != 1:
            raise ValueError("symbolic reduction is only defined for one color")
        return ReducedRep(
            word.bottom, word.top(), None,
            _symbolic_restrict(unreduced_burau(word), word.top()),
        )
    _guard_point(word.bottom, point)
    a = unreduced_at(word, point).T
    src = evaluated_basis(word.bottom, point)
    dst = evaluated_basis(word.top(), point)
    return ReducedRep(
        word.bottom, word.top(), point, restrict_to_basis(a, src, dst, tol)
    )


def _symbolic_restrict(u: UnreducedRep, top: Coloring):
    """Exact restriction over Z[t, 1/t]; divisions are by unit monomials."""
    n = u.n
    if n <= 1:
        return ()
    src = basis_coefficients(u.bottom)
    dstc = basis_coefficients(top)
    diag = [dstc[j][j] for j in range(n - 1)]
    sub = [dstc[j][j + 1] for j in range(n - 1)]
    at = [[u.matrix[j][i] for j in range(n)] for i in range(n)]  # transpose
    cols = []
    for col in range(n - 1):
        y = []
        for row in range(n):
            acc = LaurentPoly.zero(1)
            for k in range(n):
                if not src[col][k].is_zero():
                    acc = acc + at[row][k] * src[col][k]
            y.append(acc)
        sol = []
        for row in range(n - 1):
            val = y[row]
            if row:
                val = val - sub[row - 1] * sol[row - 1]
            sol.append(val * (diag[row] ** -1))
        residual = y[n - 1] - sub[n - 2] * sol[n - 2]
        if not residual.is_zero():
            raise SubspaceNotInvariant(
                f"symbolic residual {residual} at column {col}"
            )
        cols.append(sol)
    return tuple(tuple(cols[c][r] for c in range(n - 1)) for r in range(n - 1))


# ---------------------------------------------------------------------------
# the representation and the form
# ---------------------------------------------------------------------------


def gassner_matrix(word: BraidWord, point: TorusPoint, tol: float = 1e-9) -> np.ndarray:
    """Evaluated colored Gassner matrix of an endomorphism word.

    Homomorphic in word order and unitary for xi_form of the same coloring.
    """
    word.require_endomorphism()
    _guard_point(word.bottom, point)
    rev = word.reversed_letters()
    a = unreduced_at(rev, point).T
    basis = evaluated_basis(word.bottom, point)
    return restrict_to_basis(a, basis, basis, tol)


def gassner_symbolic(word: BraidWord) -> tuple:
    """Symbolic one-variable Gassner (reduced Burau) matrix of a word."""
    if word.bottom.mu != 1:
        raise ValueError("symbolic matrices are only available for one color")
    word.require_endomorphism()
    rev = word.reversed_letters()
    return _symbolic_restrict(unreduced_burau(rev), rev.top())


@dataclass(frozen=True)
class XiForm:
    coloring: Coloring
    point: TorusPoint | None
    matrix: object  # ndarray or tuple-of-tuples of LaurentPoly


@lru_cache(maxsize=None)
def _xi_evaluated(coloring: Coloring, point: TorusPoint):
    return evaluate_form(coloring, point)


def xi_form(coloring: Coloring, point: TorusPoint | None = None) -> XiForm:
    """The skew-Hermitian form for which the Gassner matrices are unitary.

    Computed from intersection numbers on the free abelian cover; symbolic
    (point=None) for any number of colors, complex-valued otherwise.
    """
    if point is None:
        return XiForm(coloring, None, symbolic_form(coloring))
    _guard_point(coloring, point)
    return XiForm(coloring, point, _xi_evaluated(coloring, point))


def xi_matrix(coloring: Coloring, point: TorusPoint) -> np.ndarray:
    return np.array(xi_form(coloring, point).matrix, dtype=complex)


def _guard_point(coloring: Coloring, point: TorusPoint):
    if point.num_vars != coloring.mu:
        raise ValueError(
            f"point has {point.num_vars} coordinates, coloring has mu={coloring.mu}"
        )
    occurring = {abs(c) for c in coloring.entries}
    for color in occurring:
        if point.rotations[color - 1] == 0:
            raise EvaluationAtOne(f"omega_{color} = 1 on an occurring color")


def tridiagonal_form(signs, point: TorusPoint | None = None):
    """The printed one-variable form: diagonal (e_j + e_{j+1})/2 * (t - 1/t),
    upper 1 - t^{e_{j+1}}, lower t^{-e_{j+1}} - 1.

    Kept as an independent oracle for tests; xi_form computes the same matrix
    from intersection numbers on the infinite cyclic cover.
    """
    n = len(signs)
    if point is None:
        t = LaurentPoly.gen(1, 1)
        zero = LaurentPoly.zero(1)
        out = [[zero for _ in range(max(n - 1, 0))] for _ in range(max(n - 1, 0))]
        for j in range(n - 1):
            half = (signs[j] + signs[j + 1]) // 2  # signs sum to -2, 0, or 2
            out[j][j] = (t - t ** -1) * half
            if j + 1 < n - 1:
                out[j][j + 1] = LaurentPoly.one(1) - t ** signs[j + 1]
                out[j + 1][j] = t ** (-signs[j + 1]) - 1
        return tuple(tuple(row) for row in out)
    out = np.zeros((max(n - 1, 0), max(n - 1, 0)), dtype=complex)
    w = point.values()[0]
    for j in range(n - 1):
        out[j, j] = ((signs[j] + signs[j + 1]) // 2) * (w - np.conj(w))
        if j + 1 < n - 1:
            wexp = point.coordinate_power(1, signs[j + 1])
            out[j, j + 1] = 1 - wexp
            out[j + 1, j] = np.conj(wexp) - 1
    return out
