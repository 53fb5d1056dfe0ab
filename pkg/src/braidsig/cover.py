"""Abelian covers of the punctured disk as fat graphs, and their forms.

The punctured disk deformation retracts onto a rose with one counterclockwise
loop e_j per puncture.  The coloring sends the loop of strand j to the deck
transformation tau_j = t_{|c_j|}^{sgn c_j}, so every abelian cover of the rose
is a graph whose vertices are deck-group elements and whose edges (g, j) run
from g to g * tau_j.  The ribbon structure at every vertex is the lift of the
planar order (out_1, in_1, out_2, in_2, ..., out_n, in_n), counterclockwise.

Intersection numbers of cycles are counted at vertices: a cycle passing
through a vertex occupies a chord of the boundary circle of a small disk, and
two chords contribute ±1 when they interleave.  The second cycle is pushed
slightly off the graph (incoming strand just clockwise of its slot, outgoing
just counterclockwise), which resolves all shared-edge and shared-slot ties;
positions are integers (slot * 4 ± 1), so the count is exact.

Two deck groups appear: the free abelian group (sheets are integer vectors),
which yields the Laurent-valued form of the infinite cover, and the finite
group C_{k_1} x ... x C_{k_mu} given by the coordinate orders of a torus
point, which yields the complex form on the generalized eigenspace of the
branched cover.  Branch relations are the loops (1 + tau + ... + tau^{k-1}) e;
the eigenspace projector kills them, so no 2-cells are ever attached.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .braids import BraidWord, Coloring
from .errors import EvaluationAtOne, NotEndomorphism
from .laurent import LaurentPoly, TorusPoint, t_power

Sheet = tuple[int, ...]
Step = tuple[Sheet, int, int]  # (sheet of the edge tail, letter 1..n, ±1)


def strand_variable(coloring: Coloring, j: int) -> LaurentPoly:
    """tau_j = t_{|c_j|}^{sgn c_j} for the strand at position j (1-based)."""
    c = coloring.entries[j - 1]
    return t_power(coloring.mu, abs(c), 1 if c > 0 else -1)


def _tau_vector(coloring: Coloring, j: int) -> Sheet:
    """Exponent vector of tau_j in the free abelian deck group."""
    c = coloring.entries[j - 1]
    out = [0] * coloring.mu
    out[abs(c) - 1] = 1 if c > 0 else -1
    return tuple(out)


def _add(a: Sheet, b: Sheet, orders=None) -> Sheet:
    if orders is None:
        return tuple(x + y for x, y in zip(a, b))
    return tuple((x + y) % k for x, y, k in zip(a, b, orders))


def _sub(a: Sheet, b: Sheet, orders=None) -> Sheet:
    if orders is None:
        return tuple(x - y for x, y in zip(a, b))
    return tuple((x - y) % k for x, y, k in zip(a, b, orders))


# ---------------------------------------------------------------------------
# loops and intersection numbers
# ---------------------------------------------------------------------------


def step_endpoints(step: Step, coloring: Coloring, orders=None):
    sheet, j, direction = step
    head = _add(sheet, _tau_vector(coloring, j), orders)
    return (sheet, head) if direction > 0 else (head, sheet)


def translate_loop(loop, g: Sheet, orders=None):
    return [(_add(sheet, g, orders), j, d) for sheet, j, d in loop]


def loop_vertices(loop, coloring: Coloring, orders=None):
    return {step_endpoints(s, coloring, orders)[0] for s in loop}


def _corners(loop, coloring: Coloring, orders=None):
    """Corners (vertex, arrive slot, leave slot) of a cyclic edge loop.

    Slot s of letter j is out_j = 2(j-1), in_j = 2j-1 in the counterclockwise
    order at every vertex.
    """
    corners = []
    m = len(loop)
    for k in range(m):
        prev = loop[k]
        nxt = loop[(k + 1) % m]
        _, end_prev = step_endpoints(prev, coloring, orders)
        start_next, _ = step_endpoints(nxt, coloring, orders)
        if end_prev != start_next:
            raise ValueError("steps do not form a closed loop")
        arrive = 2 * prev[1] - 1 if prev[2] > 0 else 2 * (prev[1] - 1)
        leave = 2 * (nxt[1] - 1) if nxt[2] > 0 else 2 * nxt[1] - 1
        corners.append((end_prev, arrive, leave))
    return corners


def _strictly_between(start: int, x: int, end: int, period: int) -> bool:
    return 0 < (x - start) % period < (end - start) % period


def _crossing_sign(a, b, c, d, period) -> int:
    """Sign of the crossing of x-chord a->b with y-chord c->d, 0 if disjoint.

    Positions live on a circle of the given circumference; +1 when the
    counterclockwise order is (a, c, b, d), -1 when it is (a, d, b, c).
    """
    if a == b:
        return 0
    c_in = _strictly_between(a, c, b, period)
    d_in = _strictly_between(a, d, b, period)
    if c_in and not d_in:
        return 1
    if d_in and not c_in:
        return -1
    return 0


def intersection_number(x_loop, y_loop, coloring: Coloring, orders=None) -> int:
    """Signed intersection count of two distinct cycles on the cover surface.

    The x-cycle sits exactly on the graph; the y-cycle is pushed off it.
    Positions are slot*4 for x and slot*4 ∓ 1 for y (arrive/leave).
    """
    n = coloring.n
    period = 8 * n
    y_at: dict = {}
    for v, arr, lv in _corners(y_loop, coloring, orders):
        y_at.setdefault(v, []).append((4 * arr - 1, 4 * lv + 1))
    total = 0
    for v, arr, lv in _corners(x_loop, coloring, orders):
        for c, d in y_at.get(v, ()):
            total += _crossing_sign((4 * arr) % period, (4 * lv) % period,
                                    c % period, d % period, period)
    return total


# ---------------------------------------------------------------------------
# homology basis loops
# ---------------------------------------------------------------------------


def basis_loops(coloring: Coloring):
    """Cycles representing the preferred basis of the cover's first homology.

    For one color the j-th loop is delta_j e_j - delta_{j+1} e_{j+1} with
    delta = 1 on positive strands and -t on negative ones (the basis in which
    the one-variable Burau matrices and tridiagonal form take their standard
    shape).  For several colors it is the quadrilateral
    (1 - tau_{j+1}) e_j - (1 - tau_j) e_{j+1}.
    Returned loops live on the free abelian cover; reduce sheets mod the
    coordinate orders to obtain their images in a finite cover.
    """
    n, mu = coloring.n, coloring.mu
    zero = (0,) * mu
    loops = []
    if mu == 1:
        t = (1,)
        for j in range(1, n):
            first = (zero, j, 1) if coloring.entries[j - 1] > 0 else (t, j, -1)
            second = ((zero, j + 1, -1) if coloring.entries[j] > 0
                      else (t, j + 1, 1))
            loops.append([first, second])
    else:
        for j in range(1, n):
            tj = _tau_vector(coloring, j)
            tj1 = _tau_vector(coloring, j + 1)
            loops.append([
                (zero, j, 1),
                (tj, j + 1, 1),
                (tj1, j, -1),
                (zero, j + 1, -1),
            ])
    return loops


def basis_coefficients(coloring: Coloring):
    """Laurent coefficients of the basis loops on the unreduced chain basis.

    Column j (0-based) of the returned (n x n-1) matrix expands basis loop j
    as sum coeff[k] * e_{k+1}.
    """
    n, mu = coloring.n, coloring.mu
    cols = []
    if mu == 1:
        def delta(j):
            return (LaurentPoly.one(1) if coloring.entries[j - 1] > 0
                    else -t_power(1, 1, 1))
        for j in range(1, n):
            col = [LaurentPoly.zero(mu) for _ in range(n)]
            col[j - 1] = delta(j)
            col[j] = -delta(j + 1)
            cols.append(col)
    else:
        one = LaurentPoly.one(mu)
        for j in range(1, n):
            col = [LaurentPoly.zero(mu) for _ in range(n)]
            col[j - 1] = one - strand_variable(coloring, j + 1)
            col[j] = -(one - strand_variable(coloring, j))
            cols.append(col)
    return cols


# ---------------------------------------------------------------------------
# the Laurent-valued form of the free abelian cover
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def symbolic_form(coloring: Coloring):
    """Matrix of the equivariant intersection form on the preferred basis.

    Entry (i, j) is sum_g <g v_i, v_j> g^{-1} over the free abelian deck
    group, a Laurent polynomial; the sum is finite because translates far from
    v_j share no vertices with it.
    """
    n = coloring.n
    loops = basis_loops(coloring)
    verts = [loop_vertices(lp, coloring) for lp in loops]
    size = n - 1
    xi = [[LaurentPoly.zero(coloring.mu) for _ in range(size)] for _ in range(size)]
    for i in range(size):
        for j in range(size):
            candidates = {_sub(u, w) for u in verts[j] for w in verts[i]}
            acc = LaurentPoly.zero(coloring.mu)
            for g in candidates:
                if i == j and not any(g):
                    continue  # <v, v> = 0 by skew symmetry
                count = intersection_number(
                    translate_loop(loops[i], g), loops[j], coloring
                )
                if count:
                    acc = acc + LaurentPoly.monomial(
                        coloring.mu, tuple(-x for x in g), count
                    )
            xi[i][j] = acc
    return tuple(tuple(row) for row in xi)


def evaluate_form(coloring: Coloring, point: TorusPoint, prec: int | None = None):
    """Complex matrix of the form at a torus point (coordinates must avoid 1
    on occurring colors)."""
    _require_away_from_one(coloring, point)
    xi = symbolic_form(coloring)
    n1 = len(xi)
    if prec is None:
        out = np.zeros((n1, n1), dtype=complex)
        for i in range(n1):
            for j in range(n1):
                out[i, j] = xi[i][j].evaluate(point)
        return out
    return [[xi[i][j].evaluate(point, prec) for j in range(n1)] for i in range(n1)]


def _require_away_from_one(coloring: Coloring, point: TorusPoint):
    if point.num_vars != coloring.mu:
        raise ValueError(
            f"point has {point.num_vars} coordinates, coloring has mu={coloring.mu}"
        )
    occurring = {abs(c) for c in coloring.entries}
    for color in sorted(occurring):
        if point.rotations[color - 1] == 0:
            raise EvaluationAtOne(f"omega_{color} = 1 on an occurring color")


# ---------------------------------------------------------------------------
# finite branched covers
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FatGraphCover:
    """The finite abelian cover of the punctured disk, as a fat graph."""

    coloring: Coloring
    point: TorusPoint

    @property
    def orders(self) -> tuple[int, ...]:
        return self.point.orders

    @property
    def group_size(self) -> int:
        return math.prod(self.orders)

    def group(self):
        return itertools.product(*(range(k) for k in self.orders))

    @property
    def vertex_count(self) -> int:
        return self.group_size

    @property
    def edge_count(self) -> int:
        return self.group_size * self.coloring.n

    def character(self, g: Sheet):
        """chi(g) = prod omega_i^{g_i} from exact angles."""
        return self.point.monomial_value(g)

    # -- plain graph topology ------------------------------------------------

    def _components(self):
        comp = {}
        for start in self.group():
            if start in comp:
                continue
            tag = len(comp)
            stack = [start]
            comp[start] = tag
            while stack:
                v = stack.pop()
                for j in range(1, self.coloring.n + 1):
                    tau = _tau_vector(self.coloring, j)
                    for w in (_add(v, tau, self.orders), _sub(v, tau, self.orders)):
                        if w not in comp:
                            comp[w] = tag
                            stack.append(w)
        return comp

    def graph_h1_rank(self) -> int:
        comps = len(set(self._components().values()))
        return self.edge_count - self.vertex_count + comps

    def spanning_tree_cycles(self):
        """One cycle per non-tree edge: the classical H1 basis of the graph.

        Each cycle is a closed step loop through the base sheet of its
        component, usable with intersection_number.
        """
        parent: dict = {}
        comps = self._components()
        roots = {}
        for v, tag in comps.items():
            roots.setdefault(tag, v)
        tree_edges = set()
        for root in roots.values():
            parent[root] = None
            queue = [root]
            while queue:
                v = queue.pop(0)
                for j in range(1, self.coloring.n + 1):
                    tau = _tau_vector(self.coloring, j)
                    for w, step in (
                        (_add(v, tau, self.orders), (v, j, 1)),
                        (_sub(v, tau, self.orders), (_sub(v, tau, self.orders), j, -1)),
                    ):
                        if w not in parent:
                            parent[w] = (v, step)
                            tree_edges.add((step[0], step[1]))
                            queue.append(w)

        def path_to_root(v):
            steps = []
            while parent[v] is not None:
                prev, step = parent[v]
                steps.append(step)
                v = prev
            return steps  # steps read v -> root

        cycles = []
        for g in self.group():
            for j in range(1, self.coloring.n + 1):
                if (g, j) in tree_edges:
                    continue
                head = _add(g, _tau_vector(self.coloring, j), self.orders)
                up = [(s[0], s[1], -s[2]) for s in reversed(path_to_root(g))]
                down = path_to_root(head)
                cycles.append(up + [(g, j, 1)] + down)
        return cycles

    # -- ribbon boundary ---------------------------------------------------

    def boundary_walks(self):
        """Boundary circles of the thickened cover graph, as dart orbits.

        Darts are (sheet, letter, end) with end 0 at the tail, 1 at the head.
        Walking a boundary arc along the left side of a dart ends at the slot
        just clockwise of the dart's far end; the walk continues from there.
        """
        n = self.coloring.n

        def slot_of(dart):
            sheet, j, end = dart
            return 2 * (j - 1) if end == 0 else 2 * j - 1

        def dart_at(sheet, slot):
            j, r = divmod(slot, 2)
            j += 1
            if r == 0:
                return (sheet, j, 0)
            return (_sub(sheet, _tau_vector(self.coloring, j), self.orders), j, 1)

        def vertex_of(dart):
            sheet, j, end = dart
            if end == 0:
                return sheet
            return _add(sheet, _tau_vector(self.coloring, j), self.orders)

        def next_dart(dart):
            sheet, j, end = dart
            far = (sheet, j, 1 - end)
            v = vertex_of(far)
            slot = (slot_of(far) - 1) % (2 * n)
            return dart_at(v, slot)

        darts = {
            (g, j, end)
            for g in self.group()
            for j in range(1, n + 1)
            for end in (0, 1)
        }
        walks = []
        while darts:
            start = min(darts)
            walk = [start]
            darts.discard(start)
            cur = next_dart(start)
            while cur != start:
                walk.append(cur)
                darts.discard(cur)
                cur = next_dart(cur)
            walks.append(walk)
        return walks

    def boundary_component_count(self) -> int:
        """Number of boundary circles of the branched cover surface.

        The ribbon walks of the unbranched cover split into the puncture
        circles (|G| / k_{|c_j|} of them over puncture j, filled in by the
        branching) and the outer circles, which survive.
        """
        punctures = sum(
            self.group_size // self.orders[abs(c) - 1]
            for c in self.coloring.entries
        )
        return len(self.boundary_walks()) - punctures

    # -- eigenspace data -----------------------------------------------------

    def projector_matrix(self) -> np.ndarray:
        """The eigenspace projector as a matrix on the edge chain space.

        Edge coordinates are indexed by (sheet, letter) in the order given by
        iterating the group and then letters.  Exposed for the idempotence
        check; the form and action computations never materialize it.
        """
        elems = list(self.group())
        index = {g: k for k, g in enumerate(elems)}
        n = self.coloring.n
        size = len(elems) * n
        p = np.zeros((size, size), dtype=complex)
        for g in elems:
            chi_bar = np.conj(self.character(g))
            for h in elems:
                gh = _add(g, h, self.orders)
                for j in range(n):
                    p[index[gh] * n + j, index[h] * n + j] += chi_bar
        return p / len(elems)


def build_cover(coloring: Coloring, point: TorusPoint) -> FatGraphCover:
    if point.num_vars != coloring.mu:
        raise ValueError(
            f"point has {point.num_vars} coordinates, coloring has mu={coloring.mu}"
        )
    return FatGraphCover(coloring, point)


@dataclass(frozen=True)
class EigenSpaceData:
    """Basis and skew-Hermitian form of the character eigenspace."""

    cover: FatGraphCover
    basis: np.ndarray  # (n x n-1) evaluated coefficients of the basis loops
    form: np.ndarray   # (n-1 x n-1) intersection form on the basis


def eigenspace_form(cover: FatGraphCover) -> EigenSpaceData:
    """Intersection form on the eigenspace of the branched cover.

    Entry (i, j) is (1/|G|) sum_k conj(chi(k)) <k v_i, v_j>, the pairing of
    the projected basis loops; it equals the Laurent form evaluated at the
    point divided by |G|.
    """
    coloring, point = cover.coloring, cover.point
    _require_away_from_one(coloring, point)
    loops = [
        [(tuple(s % k for s, k in zip(sheet, cover.orders)), j, d)
         for sheet, j, d in lp]
        for lp in basis_loops(coloring)
    ]
    size = coloring.n - 1
    form = np.zeros((size, size), dtype=complex)
    for k in cover.group():
        chi_bar = np.conj(cover.character(k))
        if chi_bar == 0:
            continue
        for i in range(size):
            shifted = translate_loop(loops[i], k, cover.orders)
            for j in range(size):
                if i == j and not any(k):
                    continue
                count = intersection_number(shifted, loops[j], coloring, cover.orders)
                if count:
                    form[i, j] += chi_bar * count
    form /= cover.group_size
    coeffs = basis_coefficients(coloring)
    basis = np.array(
        [[coeffs[j][r].evaluate(point) for j in range(size)]
         for r in range(coloring.n)],
        dtype=complex,
    )
    return EigenSpaceData(cover, basis, form)


# ---------------------------------------------------------------------------
# the braid action through free-group rewriting
# ---------------------------------------------------------------------------


def _free_reduce(word):
    out = []
    for g in word:
        if out and out[-1] == -g:
            out.pop()
        else:
            out.append(g)
    return out


def _substitute(word, images):
    out = []
    for g in word:
        repl = images[abs(g)]
        chunk = repl if g > 0 else [-x for x in reversed(repl)]
        for x in chunk:
            if out and out[-1] == -x:
                out.pop()
            else:
                out.append(x)
    return out


def artin_images(word: BraidWord, max_length: int = 1_000_000):
    """Images of the free generators under the braid's automorphism.

    Generator g_j is the counterclockwise meridian of puncture j; the letter
    sigma_i sends g_i -> g_i g_{i+1} g_i^{-1} and g_{i+1} -> g_i, applied left
    to right along the word.
    """
    n = word.n
    images = {j: [j] for j in range(1, n + 1)}
    for i, e in word.letters:
        if e > 0:
            rule = {i: [i, i + 1, -i], i + 1: [i]}
        else:
            rule = {i: [i + 1], i + 1: [-(i + 1), i, i + 1]}
        step = {j: rule.get(j, [j]) for j in range(1, n + 1)}
        images = {j: _substitute(images[j], step) for j in range(1, n + 1)}
        if any(len(v) > max_length for v in images.values()):
            raise ValueError("free-group images exceeded the length cap")
    return images


def eigen_action_matrix(cover: FatGraphCover, word: BraidWord) -> np.ndarray:
    """Action of the braid on the eigenspace coordinates of the edge chains.

    Row j expands the image of the j-th projected chain generator; computed by
    walking each rewritten generator word through the cover and weighting each
    edge by the character of the sheet it starts on.
    """
    coloring = cover.coloring
    n = coloring.n
    images = artin_images(word)
    out = np.zeros((n, n), dtype=complex)
    for j in range(1, n + 1):
        pos = (0,) * coloring.mu
        for g in images[j]:
            k = abs(g)
            tau = _tau_vector(coloring, k)
            if g > 0:
                out[j - 1, k - 1] += cover.character(pos)
                pos = _add(pos, tau, cover.orders)
            else:
                pos = _sub(pos, tau, cover.orders)
                out[j - 1, k - 1] -= cover.character(pos)
    return out


def braid_action(cover: FatGraphCover, word: BraidWord) -> np.ndarray:
    """Unitary matrix of the braid on the eigenspace basis of the cover.

    Matches the convention of the evaluated reduced Burau representation: the
    unreduced action of the reversed word is transposed and restricted to the
    span of the basis loops.
    """
    word.require_endomorphism()
    if word.bottom != cover.coloring:
        raise NotEndomorphism("word coloring does not match the cover")
    from .burau import restrict_to_basis  # local import, no cycle at load time

    data = eigenspace_form(cover)
    unreduced = eigen_action_matrix(cover, word.reversed_letters())
    return restrict_to_basis(unreduced.T, data.basis, data.basis)
