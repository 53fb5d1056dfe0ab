"""Colored braid words: objects, group operations, closures, padding.

A coloring is a sequence of signed colors c_j in {±1, ..., ±mu}; the sign is
the strand orientation, the absolute value the color.  A braid word stores its
bottom coloring and a letter list [(i, e), ...] meaning sigma_i^e, read bottom
to top.  Each letter transposes the colorings of positions i, i+1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

from .errors import ColoringMismatch, NotEndomorphism
from .laurent import TorusPoint, is_admissible


@dataclass(frozen=True)
class Coloring:
    entries: tuple[int, ...]
    mu: int

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(c) for c in self.entries))
        for c in self.entries:
            if c == 0 or abs(c) > self.mu:
                raise ValueError(f"color {c} out of range ±1..±{self.mu}")

    @classmethod
    def parse(cls, text: str, mu: int | None = None) -> "Coloring":
        """Parse comma-separated signed colors, e.g. "1,1,-2"."""
        entries = tuple(int(p) for p in text.split(",") if p.strip())
        if not entries:
            raise ValueError(f"empty coloring {text!r}")
        inferred = max(abs(c) for c in entries)
        return cls(entries, mu if mu is not None else inferred)

    @property
    def n(self) -> int:
        return len(self.entries)

    def ell(self) -> tuple[int, ...]:
        """Algebraic strand count per color: ell_i = sum of signs over |c_j| = i."""
        out = [0] * self.mu
        for c in self.entries:
            out[abs(c) - 1] += 1 if c > 0 else -1
        return tuple(out)

    def swapped(self, i: int) -> "Coloring":
        """Transpose entries at positions i, i+1 (1-based)."""
        e = list(self.entries)
        e[i - 1], e[i] = e[i], e[i - 1]
        return Coloring(tuple(e), self.mu)

    def extended(self, extra: Iterable[int]) -> "Coloring":
        return Coloring(self.entries + tuple(extra), self.mu)

    def __str__(self):
        return ",".join(str(c) for c in self.entries)


@dataclass(frozen=True)
class BraidWord:
    bottom: Coloring
    letters: tuple[tuple[int, int], ...]

    def __post_init__(self):
        letters = tuple((int(i), int(e)) for i, e in self.letters)
        object.__setattr__(self, "letters", letters)
        for i, e in letters:
            if not 1 <= i <= self.bottom.n - 1:
                raise ValueError(
                    f"letter index {i} out of range 1..{self.bottom.n - 1}"
                )
            if e not in (-1, 1):
                raise ValueError(f"letter sign must be ±1, got {e}")

    @classmethod
    def parse(cls, word: str, colors: str | Coloring, mu: int | None = None):
        """Parse whitespace-separated signed indices, "1 -2 1" = s1 s2^-1 s1."""
        bottom = colors if isinstance(colors, Coloring) else Coloring.parse(colors, mu)
        letters = []
        for tok in word.split():
            v = int(tok)
            if v == 0:
                raise ValueError("letter index 0 is not a generator")
            letters.append((abs(v), 1 if v > 0 else -1))
        return cls(bottom, tuple(letters))

    @classmethod
    def identity(cls, coloring: Coloring) -> "BraidWord":
        return cls(coloring, ())

    @property
    def n(self) -> int:
        return self.bottom.n

    def __len__(self):
        return len(self.letters)

    # -- colorings along the word ------------------------------------------

    def levels(self) -> list[Coloring]:
        """Colorings below each letter plus the top: levels()[k] sits under
        letter k (0-based); levels()[-1] is the top coloring."""
        out = [self.bottom]
        for i, _ in self.letters:
            out.append(out[-1].swapped(i))
        return out

    def top(self) -> Coloring:
        c = self.bottom
        for i, _ in self.letters:
            c = c.swapped(i)
        return c

    def is_endomorphism(self) -> bool:
        return self.top() == self.bottom

    def require_endomorphism(self):
        if not self.is_endomorphism():
            raise NotEndomorphism(
                f"top coloring {self.top()} differs from bottom {self.bottom}"
            )

    # -- group operations ----------------------------------------------------

    def compose(self, other: "BraidWord") -> "BraidWord":
        """self followed by other (self at the bottom)."""
        if self.top() != other.bottom:
            raise ColoringMismatch(
                f"top {self.top()} does not match bottom {other.bottom}"
            )
        return BraidWord(self.bottom, self.letters + other.letters)

    def reflect(self) -> "BraidWord":
        """Mirror through the horizontal mid-level: the inverse braid."""
        letters = tuple((i, -e) for i, e in reversed(self.letters))
        return BraidWord(self.top(), letters)

    def reversed_letters(self) -> "BraidWord":
        """Same letters read top to bottom (upside-down braid, same closure)."""
        return BraidWord(self.top(), tuple(reversed(self.letters)))

    # -- permutation and closure ----------------------------------------------

    def permutation(self) -> tuple[int, ...]:
        """perm[j] = top position of the strand starting at bottom position j
        (0-based positions)."""
        state = list(range(self.n))  # state[pos] = strand id at that level
        for i, _ in self.letters:
            state[i - 1], state[i] = state[i], state[i - 1]
        perm = [0] * self.n
        for pos, strand in enumerate(state):
            perm[strand] = pos
        return tuple(perm)

    def strands_at_letters(self) -> list[tuple[int, int]]:
        """For each letter, the (strand at position i, strand at position i+1)
        just below it; strands are labeled by bottom position (0-based)."""
        state = list(range(self.n))
        out = []
        for i, _ in self.letters:
            out.append((state[i - 1], state[i]))
            state[i - 1], state[i] = state[i], state[i - 1]
        return out

    def closure_components(self):
        """Components of the closure: cycles of the permutation.

        Returns a list of (component id, signed color, strand tuple) with
        strands in traversal order from the smallest strand of the cycle.
        Components are sorted by their smallest strand.
        """
        self.require_endomorphism()
        perm = self.permutation()
        seen = [False] * self.n
        comps = []
        for start in range(self.n):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            nxt = perm[start]
            while nxt != start:
                cycle.append(nxt)
                seen[nxt] = True
                nxt = perm[nxt]
            colors = {self.bottom.entries[s] for s in cycle}
            if len(colors) != 1:
                raise NotEndomorphism(
                    f"strand cycle {cycle} mixes colors {sorted(colors)}"
                )
            comps.append((len(comps), colors.pop(), tuple(cycle)))
        return comps

    def disjoint_union_identity(self, extra_colors: Iterable[int]) -> "BraidWord":
        """Append trivial strands of the given signed colors on the right."""
        return BraidWord(self.bottom.extended(extra_colors), self.letters)

    def __str__(self):
        return " ".join(str(i * e) for i, e in self.letters)


# ---------------------------------------------------------------------------
# admissibility padding
# ---------------------------------------------------------------------------


def padding_counts(coloring: Coloring, omega: TorusPoint) -> tuple[int, ...]:
    """Minimal counts m_i >= 0 of appended +i strands making the coloring
    admissible at omega: ell_i + m_i != 0 and coprime to the order k_i."""
    if omega.num_vars != coloring.mu:
        raise ValueError(
            f"point has {omega.num_vars} coordinates, coloring has mu={coloring.mu}"
        )
    ells = coloring.ell()
    counts = []
    for ell, k in zip(ells, omega.orders):
        m = 0
        while ell + m == 0 or math.gcd(k, abs(ell + m)) != 1:
            m += 1
        counts.append(m)
    return tuple(counts)


def pad_for_admissibility(word: BraidWord, omega: TorusPoint) -> BraidWord:
    """Append positively oriented trivial strands so the closure's coloring is
    admissible at omega.  The closure gains only split unknots, so signatures
    are unchanged."""
    word.require_endomorphism()
    counts = padding_counts(word.bottom, omega)
    extra = []
    for color, m in enumerate(counts, start=1):
        extra.extend([color] * m)
    if not extra:
        return word
    padded = word.disjoint_union_identity(extra)
    assert is_admissible(omega, padded.bottom.ell())
    return padded
