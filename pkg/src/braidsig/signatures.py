"""Link signatures: C-complex forms, the Seifert oracle, the cocycle walk.

The main algorithm computes the multivariable signature of a colored braid
closure without any surface: pad the word so its coloring is admissible at
the torus point, re-sign the letters to a layered word whose closure is an
unlink, then walk back to the target word one crossing flip at a time.  Each
flip pays a Hopf-link term (when the two crossing strands share a color) and
a Meyer-cocycle term of two evaluated Gassner matrices.

Two independent pipelines verify it: the Hermitian form of a C-complex
(spanning the general colored case, given matrices) and the classical Seifert
matrix built from the braid diagram (one color, arbitrary letter signs).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .braids import BraidWord, Coloring, pad_for_admissibility
from .burau import gassner_matrix, xi_matrix
from .config import DEFAULT_TOL
from .errors import InvalidCComplex, OutsideGuarantee, UnsupportedColoring
from .laurent import TorusPoint
from .linalg import Inertia, hermitian_signature
from .maslov import UnitaryPair, meyer


@dataclass(frozen=True)
class SignatureResult:
    omega: str
    signature: int
    nullity: Optional[int]  # None for the cocycle walk, which has no form
    method: str

    def to_dict(self):
        return {
            "omega": self.omega,
            "signature": self.signature,
            "nullity": self.nullity,
            "method": self.method,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(d["omega"], d["signature"], d["nullity"], d["method"])


# ---------------------------------------------------------------------------
# C-complex forms
# ---------------------------------------------------------------------------


def _sign_key(eps) -> str:
    return "".join("+" if e > 0 else "-" for e in eps)


@dataclass(frozen=True)
class CComplexData:
    """The family of generalized Seifert matrices A^eps of a C-complex."""

    mu: int
    matrices: tuple  # tuple of (key, int matrix as tuple of tuples)

    def __post_init__(self):
        as_dict = dict(self.matrices)
        keys = {key for key, _ in self.matrices}
        expected = set()
        for bits in range(2 ** self.mu):
            expected.add(
                "".join("+" if bits & (1 << i) == 0 else "-" for i in range(self.mu))
            )
        if keys != expected:
            raise InvalidCComplex(
                f"expected sign keys {sorted(expected)}, got {sorted(keys)}"
            )
        sizes = {len(m) for m in as_dict.values()}
        if len(sizes) != 1:
            raise InvalidCComplex("matrices must all have the same size")
        for key, m in as_dict.items():
            a = np.array(m, dtype=int) if len(m) else np.zeros((0, 0), dtype=int)
            flipped = "".join("+" if ch == "-" else "-" for ch in key)
            b = np.array(as_dict[flipped], dtype=int) if len(m) else a
            if a.shape[0] and not np.array_equal(b, a.T):
                raise InvalidCComplex(
                    f"A^{flipped} is not the transpose of A^{key}"
                )

    @classmethod
    def from_matrices(cls, mu: int, mapping) -> "CComplexData":
        items = tuple(
            sorted((key, tuple(tuple(int(x) for x in row) for row in m))
                   for key, m in mapping.items())
        )
        return cls(mu, items)

    @classmethod
    def from_json(cls, text: str) -> "CComplexData":
        data = json.loads(text)
        return cls.from_matrices(int(data["mu"]), data["matrices"])

    def to_json(self) -> str:
        return json.dumps(
            {"mu": self.mu, "matrices": {k: [list(r) for r in m]
                                         for k, m in self.matrices}},
            sort_keys=True,
        )

    @property
    def size(self) -> int:
        return len(self.matrices[0][1])

    def matrix(self, key: str) -> np.ndarray:
        d = dict(self.matrices)
        m = d[key]
        return (np.array(m, dtype=int) if len(m)
                else np.zeros((0, 0), dtype=int))


def ccomplex_H(data: CComplexData, point: TorusPoint, prec: int | None = None):
    """The Hermitian matrix sum_eps prod_i (1 - conj(omega_i)^{eps_i}) A^eps."""
    if point.num_vars != data.mu:
        raise ValueError(
            f"point has {point.num_vars} coordinates, C-complex has mu={data.mu}"
        )
    size = data.size
    if prec is None:
        out = np.zeros((size, size), dtype=complex)
    else:
        out = [[0] * size for _ in range(size)]
    for key, m in data.matrices:
        weight = 1 if prec is None else 1
        coeff = 1
        for i, ch in enumerate(key):
            e = 1 if ch == "+" else -1
            val = point.coordinate_power(i + 1, -e, prec)  # conj(w^e) = w^{-e}
            coeff = coeff * (1 - val)
        if size == 0:
            continue
        if prec is None:
            out += coeff * np.array(m, dtype=complex)
        else:
            for r in range(size):
                for c in range(size):
                    if m[r][c]:
                        out[r][c] = out[r][c] + coeff * m[r][c]
    return out


def ccomplex_signature(data: CComplexData, point: TorusPoint,
                       tol: float = DEFAULT_TOL) -> SignatureResult:
    h = ccomplex_H(data, point)
    inertia = hermitian_signature(
        h, tol, rebuild=lambda bits: ccomplex_H(data, point, prec=bits)
    )
    return SignatureResult(str(point), inertia.signature, inertia.null, "ccomplex")


# ---------------------------------------------------------------------------
# the Seifert oracle (one color, positive strands)
# ---------------------------------------------------------------------------


def seifert_from_braid(word: BraidWord) -> np.ndarray:
    """Seifert matrix of the closure from the braid diagram.

    Seifert's algorithm on a closed braid with all strands positively
    oriented yields one disk per strand and one band per letter.  H_1 of the
    surface is generated by one loop per pair of word-consecutive letters at
    the same index; the loop of the pair runs down the earlier band and back
    up the later one.
    """
    if word.bottom.mu != 1 or any(c != 1 for c in word.bottom.entries):
        raise UnsupportedColoring(
            "the Seifert oracle needs one color and positive strands"
        )
    letters = word.letters
    by_index: dict[int, list[int]] = {}
    for pos, (i, _) in enumerate(letters):
        by_index.setdefault(i, []).append(pos)
    pairs = []  # (index, first letter pos, second letter pos)
    for i, positions in sorted(by_index.items()):
        for a, b in zip(positions, positions[1:]):
            pairs.append((i, a, b))
    m = len(pairs)
    a_mat = np.zeros((m, m), dtype=int)
    sign = {pos: e for pos, (_, e) in enumerate(letters)}
    for p, (i, a, b) in enumerate(pairs):
        a_mat[p, p] = -(sign[a] + sign[b]) // 2
    for p in range(m):
        ip, ap, bp = pairs[p]
        for q in range(m):
            if p == q:
                continue
            iq, aq, bq = pairs[q]
            if ip == iq and bp == aq:
                # consecutive pairs sharing the middle band
                e = sign[bp]
                a_mat[p, q] = (1 + e) // 2   # 1 for a positive shared band
                a_mat[q, p] = (e - 1) // 2   # -1 for a negative one
            elif iq == ip + 1 and ap < aq < bp < bq:
                # loops interleaved on the shared disk, lower pair first;
                # nested or disjoint intervals stay unlinked
                a_mat[p, q] = -1
            elif iq == ip + 1 and aq < ap < bq < bp:
                a_mat[p, q] = 1
    return a_mat


def seifert_H(a_mat: np.ndarray, point: TorusPoint, prec: int | None = None):
    """Levine-Tristram matrix (1-omega) A + (1-conj omega) A^T."""
    if point.num_vars != 1:
        raise ValueError("the Seifert form is one-variable")
    w = point.coordinate_power(1, 1, prec)
    wbar = point.coordinate_power(1, -1, prec)
    if prec is None:
        return (1 - w) * a_mat + (1 - np.conj(w)) * a_mat.T
    size = a_mat.shape[0]
    return [
        [(1 - w) * int(a_mat[r, c]) + (1 - wbar) * int(a_mat[c, r])
         for c in range(size)]
        for r in range(size)
    ]


def seifert_signature(word: BraidWord, point: TorusPoint,
                      tol: float = DEFAULT_TOL) -> SignatureResult:
    a_mat = seifert_from_braid(word)
    h = seifert_H(a_mat, point)
    inertia = hermitian_signature(
        h, tol, rebuild=lambda bits: seifert_H(a_mat, point, prec=bits)
    )
    return SignatureResult(
        str(point), inertia.signature, inertia.null, "seifert_oracle"
    )


# ---------------------------------------------------------------------------
# the layered target word
# ---------------------------------------------------------------------------


def layered_signs(word: BraidWord) -> tuple[int, ...]:
    """Letter signs making the closure a layered diagram, hence an unlink.

    Components are ordered by smallest strand; strands within a component by
    traversal order from that smallest strand.  At every crossing the strand
    with the smaller key passes over; with the convention that sigma_i^{+1}
    takes the strand at position i over the next one, the crossing sign reads
    off directly.
    """
    comps = word.closure_components()
    key = {}
    for rank, (_, _, cycle) in enumerate(comps):
        for pos, strand in enumerate(cycle):
            key[strand] = (rank, pos)
    assert len(key) == word.n
    signs = []
    for sa, sb in word.strands_at_letters():
        signs.append(1 if key[sa] < key[sb] else -1)
    return tuple(signs)


def _hopf_term(level: Coloring, i: int, e: int) -> int:
    """Signature of the closure of sigma_i^{2e} over the level coloring:
    -e for equal colors (the Hopf link of the two strands, orientations in
    the exponent signs), 0 for distinct colors."""
    ca, cb = level.entries[i - 1], level.entries[i]
    if abs(ca) != abs(cb):
        return 0
    sa = 1 if ca > 0 else -1
    sb = 1 if cb > 0 else -1
    return -e * sa * sb


# ---------------------------------------------------------------------------
# the main algorithm
# ---------------------------------------------------------------------------


def braid_signature(word: BraidWord, point: TorusPoint, *, force: bool = False,
                    tol: float = DEFAULT_TOL) -> SignatureResult:
    """Multivariable signature of the closure at a torus point.

    The point must have coordinate orders > 1, pairwise coprime; other points
    are refused unless forced (the walk still runs but the additivity step it
    relies on is only proven on the guaranteed set).
    """
    word.require_endomorphism()
    if not point.is_in_TP() and not force:
        raise OutsideGuarantee(
            f"point {point} has orders {point.orders}; orders must exceed 1 "
            "and be pairwise coprime (pass force=True to compute anyway)"
        )
    padded = pad_for_admissibility(word, point)
    target = tuple(e for _, e in padded.letters)
    indices = tuple(i for i, _ in padded.letters)
    base = layered_signs(padded)
    levels = BraidWord(
        padded.bottom, tuple((i, 1) for i in indices)
    ).levels()  # level colorings do not depend on letter signs

    xi_cache: dict = {}

    def xi_at(coloring: Coloring):
        if coloring not in xi_cache:
            xi_cache[coloring] = xi_matrix(coloring, point)
        return xi_cache[coloring]

    current = list(base)
    total = 0
    for p, (e_target, e_base) in enumerate(zip(target, base)):
        if e_target == e_base:
            continue
        i = indices[p]
        level = levels[p]
        # closure(u s_i^e v) = closure(s_i^e v u); flipping the sign changes
        # the signature by the Hopf term minus the Meyer cocycle of the
        # doubled crossing against the conjugated remainder.
        rotated_letters = (
            ((i, current[p]),)
            + tuple(zip(indices[p + 1 :], current[p + 1 :]))
            + tuple(zip(indices[:p], current[:p]))
        )
        beta = BraidWord(level, rotated_letters)
        alpha = BraidWord(level, ((i, e_target), (i, e_target)))
        xi = xi_at(level)
        pair = UnitaryPair(
            xi, gassner_matrix(alpha, point, tol), gassner_matrix(beta, point, tol)
        )
        total += _hopf_term(level, i, e_target) - meyer(pair, tol)
        current[p] = e_target
    return SignatureResult(str(point), total, None, "meyer_algorithm")


def additivity_defect(w1: BraidWord, w2: BraidWord, point: TorusPoint, *,
                      force: bool = False, tol: float = DEFAULT_TOL):
    """(lhs, rhs) of the signature additivity identity.

    lhs = sign(closure(w1 w2)) - sign(closure(w1)) - sign(closure(w2)); rhs is
    minus the Meyer cocycle of the evaluated Gassner matrices of the words as
    given (no padding).  The two agree whenever the point is on the guaranteed
    set and the coloring is admissible for it.
    """
    if w1.bottom != w2.bottom:
        raise ValueError("words must share a coloring")
    lhs = (
        braid_signature(w1.compose(w2), point, force=force, tol=tol).signature
        - braid_signature(w1, point, force=force, tol=tol).signature
        - braid_signature(w2, point, force=force, tol=tol).signature
    )
    xi = xi_matrix(w1.bottom, point)
    pair = UnitaryPair(
        xi, gassner_matrix(w1, point, tol), gassner_matrix(w2, point, tol)
    )
    rhs = -meyer(pair, tol)
    return lhs, rhs


def unlinking_bound(word: BraidWord, point: TorusPoint, *, force: bool = False,
                    tol: float = DEFAULT_TOL) -> int:
    """Lower bound |signature| / 2 (rounded up) for the unlinking number."""
    sig = braid_signature(word, point, force=force, tol=tol).signature
    return (abs(sig) + 1) // 2
