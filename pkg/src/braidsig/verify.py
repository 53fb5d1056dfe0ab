"""Randomized property suites and the generators behind them.

Each suite replays one of the contracts the library is built on: the
additivity theorem, the agreement of the cocycle walk with the Seifert
oracle, the equivalence of the Maslov/Meyer definitions, unitarity of the
representation, and the agreement of the two form pipelines.  The CLI `verify`
command and the test suite both run these functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .braids import BraidWord, Coloring
from .burau import evaluated_basis, gassner_matrix, tridiagonal_form, xi_form, xi_matrix
from .cover import build_cover, eigenspace_form
from .laurent import TorusPoint, is_admissible
from .linalg import Subspace, is_isotropic, subspace_sum
from .maslov import (
    IsotropicTriple,
    UnitaryPair,
    maslov,
    maslov_alt,
    meyer,
    meyer_via_maslov,
)
from .signatures import additivity_defect, braid_signature, seifert_signature

_PRIMES = (2, 3, 5, 7, 11, 13)


@dataclass
class SuiteResult:
    name: str
    trials: int
    failures: int
    first_counterexample: str | None = None
    details: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.failures == 0

    def record_failure(self, description: str):
        self.failures += 1
        if self.first_counterexample is None:
            self.first_counterexample = description

    def summary(self) -> str:
        status = "pass" if self.passed else "FAIL"
        line = f"{self.name}: {status} ({self.trials} trials, {self.failures} failures)"
        if self.first_counterexample:
            line += f"; first counterexample: {self.first_counterexample}"
        return line


# ---------------------------------------------------------------------------
# random generators
# ---------------------------------------------------------------------------


def random_point(rng, mu: int, kmax: int = 13) -> TorusPoint:
    """Random torus point with pairwise coprime prime-power-free orders."""
    ks: list[int] = []
    for _ in range(mu):
        choices = [p for p in _PRIMES if p <= kmax and all(math.gcd(p, k) == 1 for k in ks)]
        ks.append(int(rng.choice(choices)))
    return TorusPoint(tuple(Fraction(int(rng.integers(1, k)), k) for k in ks))


def random_letters(rng, n: int, max_len: int):
    length = int(rng.integers(1, max_len + 1))
    return tuple(
        (int(rng.integers(1, n)), int(rng.choice([-1, 1]))) for _ in range(length)
    )


def random_endomorphism(rng, n: int, mu: int, max_len: int) -> BraidWord:
    """Random word whose coloring is constant on its permutation cycles."""
    letters = random_letters(rng, n, max_len)
    trial = BraidWord(Coloring((1,) * n, mu), letters)
    perm = trial.permutation()
    colors = [0] * n
    seen = [False] * n
    for start in range(n):
        if seen[start]:
            continue
        color = int(rng.integers(1, mu + 1)) * int(rng.choice([-1, 1]))
        cur = start
        while not seen[cur]:
            seen[cur] = True
            colors[cur] = color
            cur = perm[cur]
    return BraidWord(Coloring(tuple(colors), mu), letters)


def random_admissible_instance(rng, nmax=5, mumax=2, lmax=12, kmax=13):
    """Two endomorphisms of a shared coloring plus an admissible point."""
    while True:
        n = int(rng.integers(2, nmax + 1))
        mu = int(rng.integers(1, mumax + 1))
        lets1 = random_letters(rng, n, lmax)
        lets2 = random_letters(rng, n, lmax)
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for lets in (lets1, lets2):
            perm = BraidWord(Coloring((1,) * n, mu), lets).permutation()
            for s in range(n):
                a, b = find(s), find(perm[s])
                if a != b:
                    parent[a] = b
        chosen: dict[int, int] = {}
        entries = []
        for s in range(n):
            root = find(s)
            if root not in chosen:
                chosen[root] = int(rng.integers(1, mu + 1)) * int(rng.choice([-1, 1]))
            entries.append(chosen[root])
        coloring = Coloring(tuple(entries), mu)
        point = random_point(rng, mu, kmax)
        if point.is_in_TP() and is_admissible(point, coloring.ell()):
            return BraidWord(coloring, lets1), BraidWord(coloring, lets2), point


def random_skew_form(rng, dim: int) -> np.ndarray:
    """Random nondegenerate skew-Hermitian form."""
    while True:
        a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        xi = a - np.conj(a.T)
        if abs(np.linalg.det(xi)) > 1e-6:
            return xi


def random_form_unitary(rng, xi: np.ndarray) -> np.ndarray:
    """Random matrix preserving the form, via the Cayley transform.

    Form preservation g^T xi conj(g) = xi is standard pseudo-unitarity for the
    Hermitian companion K = i conj(xi); the Cayley transform of X = K^{-1} S
    with S skew-Hermitian lands in that group, and K^{-1} S = conj(xi)^{-1} H
    with H Hermitian.
    """
    dim = xi.shape[0]
    while True:
        h = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
        h = (h + np.conj(h.T)) / 2
        x = np.conj(np.linalg.inv(xi)) @ h
        eye = np.eye(dim)
        if abs(np.linalg.det(eye + x)) < 1e-8:
            continue
        g = (eye - x) @ np.linalg.inv(eye + x)
        if np.max(np.abs(g.T @ xi @ np.conj(g) - xi)) < 1e-8:
            return g


def random_unitary_pair(rng, dim: int) -> UnitaryPair:
    xi = random_skew_form(rng, dim)
    return UnitaryPair(xi, random_form_unitary(rng, xi), random_form_unitary(rng, xi))


def random_isotropic_subspace(rng, xi: np.ndarray, max_dim: int | None = None) -> Subspace:
    """Grow an isotropic subspace by null vectors of the restricted form."""
    dim = xi.shape[0]
    target = int(rng.integers(0, (max_dim if max_dim is not None else dim // 2) + 1))
    basis: list[np.ndarray] = []
    # q(x) = i xi(x, x) is real and equals -x* M x for M = i conj(xi)
    herm = 1j * np.conj(xi)
    for _ in range(target):
        if basis:
            stacked = np.array(basis)
            anni = np.conj(
                np.linalg.svd(np.conj(stacked) @ xi.T)[2][len(basis):, :]
            ).T
        else:
            anni = np.eye(dim, dtype=complex)
        if anni.shape[1] == 0:
            break
        restricted = np.conj(anni.T) @ herm @ anni
        restricted = (restricted + np.conj(restricted.T)) / 2
        eigvals, eigvecs = np.linalg.eigh(restricted)
        null = [eigvecs[:, i] for i, lam in enumerate(eigvals) if abs(lam) < 1e-10]
        posv = [(lam, eigvecs[:, i]) for i, lam in enumerate(eigvals) if lam > 1e-10]
        negv = [(lam, eigvecs[:, i]) for i, lam in enumerate(eigvals) if lam < -1e-10]
        if null:
            vec = anni @ null[0]
        elif posv and negv:
            (lp, vp), (ln, vn) = posv[0], negv[0]
            vec = anni @ (math.sqrt(-ln) * vp + math.sqrt(lp) * vn)
        else:
            break
        norm = np.linalg.norm(vec)
        if norm < 1e-10:
            break
        vec = vec / norm
        if abs(vec @ xi @ np.conj(vec)) > 1e-10 * max(1.0, float(np.max(np.abs(xi)))):
            break
        basis.append(vec)
    if not basis:
        return Subspace.zero(dim)
    out = Subspace.span(np.array(basis).T, ambient_dim=dim)
    assert is_isotropic(out, xi)
    return out


def random_isotropic_triple(rng, dim: int) -> IsotropicTriple:
    xi = random_skew_form(rng, dim)
    return IsotropicTriple(
        xi,
        random_isotropic_subspace(rng, xi),
        random_isotropic_subspace(rng, xi),
        random_isotropic_subspace(rng, xi),
    )


# ---------------------------------------------------------------------------
# suites
# ---------------------------------------------------------------------------


def run_theorem(trials: int, seed: int) -> SuiteResult:
    """lhs = rhs of the additivity identity on random admissible instances."""
    rng = np.random.default_rng(seed)
    out = SuiteResult("theorem", trials, 0)
    for _ in range(trials):
        w1, w2, pt = random_admissible_instance(rng)
        lhs, rhs = additivity_defect(w1, w2, pt)
        if lhs != rhs:
            out.record_failure(
                f"w1='{w1}' w2='{w2}' colors={w1.bottom} omega={pt}: {lhs} != {rhs}"
            )
    return out


def run_oracle(trials: int, seed: int) -> SuiteResult:
    """Cocycle walk against the Seifert oracle on one-colored words."""
    rng = np.random.default_rng(seed)
    out = SuiteResult("oracle", trials, 0)
    for _ in range(trials):
        n = int(rng.integers(2, 7))
        word = BraidWord(Coloring((1,) * n, 1), random_letters(rng, n, 14))
        point = random_point(rng, 1)
        walk = braid_signature(word, point).signature
        oracle = seifert_signature(word, point).signature
        if walk != oracle:
            out.record_failure(f"word='{word}' n={n} omega={point}: {walk} != {oracle}")
    return out


def run_maslov_defs(trials: int, seed: int) -> SuiteResult:
    """All three Maslov definitions agree; both Meyer definitions agree."""
    rng = np.random.default_rng(seed)
    out = SuiteResult("maslov-defs", trials, 0)
    for k in range(trials):
        if k % 2 == 0:
            dim = int(rng.integers(2, 9))
            triple = random_isotropic_triple(rng, dim)
            base = maslov(triple)
            quo = maslov_alt(triple, "quotient")
            ker = maslov_alt(triple, "gg_kernel")
            if not base == quo == ker:
                out.record_failure(f"maslov defs disagree: {base}, {quo}, {ker}")
        else:
            dim = int(rng.integers(1, 7))
            pair = random_unitary_pair(rng, dim)
            direct = meyer(pair)
            via = meyer_via_maslov(pair)
            if direct != via:
                out.record_failure(f"meyer defs disagree: {direct} != {via}")
    return out


def run_unitarity(trials: int, seed: int, tol: float = 1e-9) -> SuiteResult:
    """B^T Xi conj(B) = Xi and multiplicativity of the representation."""
    rng = np.random.default_rng(seed)
    out = SuiteResult("unitarity", trials, 0)
    for _ in range(trials):
        n = int(rng.integers(2, 7))
        mu = int(rng.integers(1, 3))
        word = random_endomorphism(rng, n, mu, 10)
        point = random_point(rng, mu)
        b = gassner_matrix(word, point)
        xi = xi_matrix(word.bottom, point)
        scale = max(1.0, float(np.max(np.abs(xi))) if xi.size else 0.0)
        err = float(np.max(np.abs(b.T @ xi @ np.conj(b) - xi), initial=0.0))
        if err > tol * scale:
            out.record_failure(f"word='{word}' omega={point}: unitarity error {err:.2e}")
            continue
        half = len(word.letters) // 2
        w1 = BraidWord(word.bottom, word.letters[:half])
        if w1.is_endomorphism():
            w2 = BraidWord(word.bottom, word.letters[half:])
            prod = gassner_matrix(w1, point) @ gassner_matrix(w2, point)
            if float(np.max(np.abs(prod - b), initial=0.0)) > 1e-8 * max(
                1.0, float(np.max(np.abs(b)))
            ):
                out.record_failure(f"word='{word}': not multiplicative")
    return out


def run_forms(trials: int, seed: int) -> SuiteResult:
    """Form engine against the printed tridiagonal matrix, and the finite
    cover's eigenspace form against the evaluated Laurent form (ratio 1/|G|).
    """
    rng = np.random.default_rng(seed)
    out = SuiteResult("forms", trials, 0)
    for k in range(trials):
        n = int(rng.integers(2, 7))
        if k % 2 == 0:
            signs = tuple(int(rng.choice([1, -1])) for _ in range(n))
            coloring = Coloring(signs, 1)
            got = xi_form(coloring).matrix
            want = tridiagonal_form(signs)
            if any(
                got[i][j] != want[i][j]
                for i in range(n - 1)
                for j in range(n - 1)
            ):
                out.record_failure(f"signs={signs}: symbolic form mismatch")
        else:
            mu = int(rng.integers(1, 3))
            word = random_endomorphism(rng, n, mu, 4)
            coloring = word.bottom
            point = random_point(rng, mu, kmax=7)
            cov = build_cover(coloring, point)
            data = eigenspace_form(cov)
            xi = xi_matrix(coloring, point)
            scaled = data.form * cov.group_size
            scale = max(1.0, float(np.max(np.abs(xi))) if xi.size else 0.0)
            err = float(np.max(np.abs(scaled - xi), initial=0.0))
            if err > 1e-8 * scale:
                out.record_failure(
                    f"colors={coloring} omega={point}: cover/Laurent form "
                    f"deviation {err:.2e}"
                )
    return out


SUITES = {
    "theorem": run_theorem,
    "oracle": run_oracle,
    "maslov-defs": run_maslov_defs,
    "unitarity": run_unitarity,
    "forms": run_forms,
}


def run_suite(name: str, trials: int, seed: int) -> list[SuiteResult]:
    if name == "all":
        return [fn(trials, seed) for fn in SUITES.values()]
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)} or 'all'")
    return [SUITES[name](trials, seed)]
