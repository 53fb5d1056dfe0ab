"""Maslov index of isotropic triples and the Meyer cocycle of unitary pairs.

All computations happen in a finite-dimensional complex vector space H with a
skew-Hermitian form xi(x, y) = x^T Xi conj(y) (linear in the first argument).
Graphs of unitary automorphisms live in H + H with the form (-xi) (+) xi; the
sign convention makes Meyer(g, g) = +1 for g = -omega on (omega - conj omega).

Three definitions are implemented and kept equal by tests: the Hermitian form
f(a, b) = xi(a2, b) on (L1 + L2) ∩ L3 (with any decomposition a = a1 + a2),
the same form on the quotient by (L1 ∩ L3) + (L2 ∩ L3), and the kernel-space
form on {(v1, v2, v3) : v1 + v2 + v3 = 0}.  The Meyer cocycle is computed both
as -Maslov(graph(g1^-1), diagonal, graph(g2)) and directly on
E = Im(g1^-1 - 1) ∩ Im(1 - g2) with b(e, e') = xi(x1 + x2, e').
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .config import DEFAULT_TOL
from .errors import NotInSum
from .linalg import (
    Inertia,
    Subspace,
    decompose,
    form_value,
    hermitian_signature,
    is_isotropic,
    is_skew_hermitian,
    nullspace,
    preserves_form,
    subspace_intersect,
    subspace_sum,
)


@dataclass(frozen=True)
class IsotropicTriple:
    form: np.ndarray
    l1: Subspace
    l2: Subspace
    l3: Subspace

    def __post_init__(self):
        dim = self.form.shape[0]
        for l in (self.l1, self.l2, self.l3):
            if l.ambient_dim != dim:
                raise ValueError("subspace ambient dimension differs from the form")
            if not is_isotropic(l, self.form):
                raise ValueError("subspace is not isotropic for the form")


@dataclass(frozen=True)
class UnitaryPair:
    form: np.ndarray
    g1: np.ndarray
    g2: np.ndarray

    def __post_init__(self):
        if not is_skew_hermitian(self.form):
            raise ValueError("form is not skew-Hermitian")
        for g in (self.g1, self.g2):
            if not preserves_form(g, self.form):
                raise ValueError("matrix is not unitary for the form")


def _hermitian_gram(entries: np.ndarray, tol: float) -> np.ndarray:
    scale = max(1.0, float(np.max(np.abs(entries))) if entries.size else 0.0)
    if np.max(np.abs(entries - np.conj(entries.T)), initial=0.0) > 1e3 * tol * scale:
        raise ValueError("assembled form is not Hermitian: convention bug")
    return (entries + np.conj(entries.T)) / 2


def maslov_inertia(triple: IsotropicTriple, tol: float = DEFAULT_TOL) -> Inertia:
    """Inertia of f(a, b) = xi(a2, b) on (L1 + L2) ∩ L3."""
    xi = triple.form
    w = subspace_intersect(subspace_sum(triple.l1, triple.l2, tol), triple.l3, tol)
    if w.dim == 0:
        return Inertia(0, 0, 0)
    seconds = []
    for k in range(w.dim):
        _, a2 = decompose(w.basis[:, k], triple.l1, triple.l2, tol)
        seconds.append(a2)
    entries = np.array(
        [[form_value(xi, a2, w.basis[:, l]) for l in range(w.dim)] for a2 in seconds]
    )
    return hermitian_signature(_hermitian_gram(entries, tol), tol)


def maslov(triple: IsotropicTriple, tol: float = DEFAULT_TOL) -> int:
    return maslov_inertia(triple, tol).signature


def maslov_alt(triple: IsotropicTriple, which: str, tol: float = DEFAULT_TOL) -> int:
    """The two literature variants; both agree with maslov().

    "quotient": f on ((L1+L2) ∩ L3) / ((L1 ∩ L3) + (L2 ∩ L3)).
    "gg_kernel": the form xi(a2, b1) on {v1 + v2 + v3 = 0}.
    """
    xi = triple.form
    if which == "quotient":
        w = subspace_intersect(
            subspace_sum(triple.l1, triple.l2, tol), triple.l3, tol
        )
        if w.dim == 0:
            return 0
        n_sub = subspace_sum(
            subspace_intersect(triple.l1, triple.l3, tol),
            subspace_intersect(triple.l2, triple.l3, tol),
            tol,
        )
        # a complement of N in W: columns of W whose reduction against N
        # stays independent
        basis = []
        current = n_sub
        for k in range(w.dim):
            vec = w.basis[:, k]
            if not current.contains(vec, tol):
                basis.append(vec)
                current = subspace_sum(
                    current, Subspace.span(vec, w.ambient_dim), tol
                )
        if not basis:
            return 0
        seconds = []
        for vec in basis:
            _, a2 = decompose(vec, triple.l1, triple.l2, tol)
            seconds.append(a2)
        entries = np.array(
            [[form_value(xi, a2, b) for b in basis] for a2 in seconds]
        )
        return hermitian_signature(_hermitian_gram(entries, tol), tol).signature
    if which == "gg_kernel":
        stacked = np.hstack([triple.l1.basis, triple.l2.basis, triple.l3.basis])
        if stacked.shape[1] == 0:
            return 0
        ker = nullspace(stacked, tol)
        if ker.shape[1] == 0:
            return 0
        d1, d2 = triple.l1.dim, triple.l2.dim
        v1 = triple.l1.basis @ ker[:d1, :]
        v2 = triple.l2.basis @ ker[d1 : d1 + d2, :]
        entries = np.array(
            [
                [form_value(xi, v2[:, k], v1[:, l]) for l in range(ker.shape[1])]
                for k in range(ker.shape[1])
            ]
        )
        return hermitian_signature(_hermitian_gram(entries, tol), tol).signature
    raise ValueError(f"unknown variant {which!r}")


# ---------------------------------------------------------------------------
# graphs, the doubled space, and the Meyer cocycle
# ---------------------------------------------------------------------------


def doubled_form(xi: np.ndarray) -> np.ndarray:
    """(-xi) (+) xi on H + H."""
    n = xi.shape[0]
    out = np.zeros((2 * n, 2 * n), dtype=complex)
    out[:n, :n] = -xi
    out[n:, n:] = xi
    return out


def graph_subspace(g: np.ndarray) -> Subspace:
    """Graph {x + g x} of a linear map, inside H + H."""
    n = g.shape[0]
    return Subspace.span(np.vstack([np.eye(n), g]), ambient_dim=2 * n)


def diagonal_subspace(n: int) -> Subspace:
    return graph_subspace(np.eye(n, dtype=complex))


def meyer_inertia(pair: UnitaryPair, tol: float = DEFAULT_TOL) -> Inertia:
    """Inertia of b(e, e') = xi(x1 + x2, e') on Im(g1^-1 - 1) ∩ Im(1 - g2)."""
    xi, g1, g2 = pair.form, pair.g1, pair.g2
    n = xi.shape[0]
    m1 = np.linalg.inv(g1) - np.eye(n)
    m2 = np.eye(n) - g2
    e_space = subspace_intersect(
        Subspace.span(m1, ambient_dim=n, tol=tol),
        Subspace.span(m2, ambient_dim=n, tol=tol),
        tol,
    )
    if e_space.dim == 0:
        return Inertia(0, 0, 0)
    xs = []
    for k in range(e_space.dim):
        e = e_space.basis[:, k]
        x1, *_ = np.linalg.lstsq(m1, e, rcond=None)
        x2, *_ = np.linalg.lstsq(m2, e, rcond=None)
        for m, x in ((m1, x1), (m2, x2)):
            if np.linalg.norm(m @ x - e) > tol * max(1.0, np.linalg.norm(e)):
                raise NotInSum("basis vector left the image spaces")
        xs.append(x1 + x2)
    entries = np.array(
        [
            [form_value(xi, x, e_space.basis[:, l]) for l in range(e_space.dim)]
            for x in xs
        ]
    )
    return hermitian_signature(_hermitian_gram(entries, tol), tol)


def meyer(pair: UnitaryPair, tol: float = DEFAULT_TOL) -> int:
    return meyer_inertia(pair, tol).signature


def meyer_via_maslov(pair: UnitaryPair, tol: float = DEFAULT_TOL) -> int:
    """Meyer(g1, g2) = -Maslov(graph(g1^-1), graph(id), graph(g2))."""
    double = doubled_form(pair.form)
    n = pair.form.shape[0]
    triple = IsotropicTriple(
        double,
        graph_subspace(np.linalg.inv(pair.g1)),
        diagonal_subspace(n),
        graph_subspace(pair.g2),
    )
    return -maslov(triple, tol)


def meyer_of_matrices(g1, g2, xi, tol: float = DEFAULT_TOL) -> int:
    return meyer(UnitaryPair(np.asarray(xi, dtype=complex),
                             np.asarray(g1, dtype=complex),
                             np.asarray(g2, dtype=complex)), tol)


# ---------------------------------------------------------------------------
# isotropic relations
# ---------------------------------------------------------------------------


def compose_relations(n1: Subspace, n2: Subspace, dims: tuple[int, int, int],
                      tol: float = DEFAULT_TOL) -> Subspace:
    """Composition of relations N1: H1 => H2 and N2: H2 => H3.

    dims = (dim H1, dim H2, dim H3).  The result is the set of h1 + h3 such
    that h1 + h2 lies in N1 and h2 + h3 in N2 for some h2; the graph of a
    composite map is the composite of the graphs.
    """
    d1, d2, d3 = dims
    if n1.ambient_dim != d1 + d2 or n2.ambient_dim != d2 + d3:
        raise ValueError("relation ambient dimensions do not match dims")
    p = n1.basis[:d1, :]
    q = n1.basis[d1:, :]
    r = n2.basis[:d2, :]
    s = n2.basis[d2:, :]
    if n1.dim == 0 or n2.dim == 0:
        return Subspace.zero(d1 + d3)
    ker = nullspace(np.hstack([q, -r]), tol)
    alphas = ker[: n1.dim, :]
    betas = ker[n1.dim :, :]
    vectors = np.vstack([p @ alphas, s @ betas])
    return Subspace.span(vectors, ambient_dim=d1 + d3, tol=tol)
