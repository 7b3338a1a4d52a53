"""Minimum distance diagrams: construction, verification, dilation, L-shapes.

A diagram for Cay(G, {g1, ..., gd}) is a set of n lattice points in N^d
(each standing for a unit cube) such that phi(a) = a1*g1 + ... + ad*gd hits
every group element exactly once, the set is downward closed, and each
point's 1-norm equals the BFS distance of its image.

Diameter convention: the diagram's own diameter is measured at the far
corner of each cube, so it exceeds the max point norm by d. This module
only ever exposes that quantity as `solid_diameter` (= d + max point norm
= digraph diameter + d) to keep the off-by-d trap out of the API.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import product
from math import gcd

from .abelian import GroupElement, InvariantFactors
from .cayley import CayleyDigraph, dilate_digraph, distance_profile
from .errors import MddConstructionError
from .zmatrix import Matrix, det, minors_gcd, proper_generating_set

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Mdd:
    """Lattice point set plus the digraph it was built for (dumb container)."""

    points: frozenset[tuple[int, ...]]
    source: CayleyDigraph


@dataclass(frozen=True)
class LShape:
    """Planar diagram L(l, h, w, y): an l x h rectangle missing a w x y corner."""

    l: int
    h: int
    w: int
    y: int

    def __post_init__(self):
        if not (0 <= self.w < self.l and 0 <= self.y < self.h):
            raise ValueError(f"invalid L-shape parameters {self}")
        if (self.l - self.y) * (self.h - self.w) < 0:
            raise ValueError(f"sides of {self} cannot interlock")
        if self.l == self.y and self.h == self.w:
            raise ValueError(f"both side differences vanish in {self}")

    @property
    def area(self) -> int:
        return self.l * self.h - self.w * self.y

    def cubes(self) -> frozenset[tuple[int, int]]:
        return frozenset(
            (x, y)
            for x in range(self.l)
            for y in range(self.h)
            if x < self.l - self.w or y < self.h - self.y
        )

    def __str__(self) -> str:
        return f"L({self.l},{self.h},{self.w},{self.y})"


def phi(g: CayleyDigraph, a: tuple[int, ...]) -> GroupElement:
    """Group element a1*g1 + ... + ad*gd for a lattice point a in N^d."""
    group = g.group
    if len(a) != group.rank:
        raise ValueError("lattice point rank does not match the digraph")
    out = group.zero()
    for coeff, gen in zip(a, g.normalized_gens):
        if coeff:
            out = group.add(out, group.scalar_mul(coeff, gen))
    return out


def _candidates(
    group: InvariantFactors,
    gens: tuple[GroupElement, ...],
    target_idx: int,
    norm: int,
) -> list[tuple[int, ...]]:
    """All points with the given 1-norm mapping to the target, lex ascending."""
    d = len(gens)
    out: list[tuple[int, ...]] = []

    def rec(i: int, remaining: int, acc: tuple[int, ...], value: GroupElement) -> None:
        if i == d - 1:
            v = group.add(value, group.scalar_mul(remaining, gens[i]))
            if group.index(v) == target_idx:
                out.append(acc + (remaining,))
            return
        step = gens[i]
        v = value
        for x in range(remaining + 1):
            rec(i + 1, remaining - x, acc + (x,), v)
            v = group.add(v, step)

    rec(0, norm, (), group.zero())
    return out


def build_mdd(g: CayleyDigraph) -> Mdd:
    """Deterministic diagram construction.

    Elements are processed by increasing BFS distance (ties by element
    index); each takes the lexicographically smallest minimal-norm
    representative whose immediate predecessors are already placed. That
    greedy first descent suffices in practice; a depth-first corrective
    search backtracks over earlier choices if it ever strands an element,
    and its activation is logged.
    """
    group = g.group
    gens = g.normalized_gens
    profile = distance_profile(g)
    dist = profile.distances
    n = group.order
    order = sorted(range(n), key=lambda i: (dist[i], i))
    cands = [_candidates(group, gens, idx, dist[idx]) for idx in order]

    chosen: list[tuple[int, ...] | None] = [None] * n
    placed: set[tuple[int, ...]] = set()
    pointer = [0] * n
    pos = 0
    backtracked = False
    while pos < n:
        found = False
        options = cands[pos]
        k = pointer[pos]
        while k < len(options):
            a = options[k]
            if all(
                a[:i] + (a[i] - 1,) + a[i + 1 :] in placed
                for i in range(len(a))
                if a[i] > 0
            ):
                chosen[pos] = a
                placed.add(a)
                pointer[pos] = k
                found = True
                break
            k += 1
        if found:
            pos += 1
            continue
        pointer[pos] = 0
        pos -= 1
        if pos < 0:
            raise MddConstructionError(f"diagram construction exhausted for {g}")
        backtracked = True
        placed.discard(chosen[pos])  # LIFO removal keeps the set downward closed
        chosen[pos] = None
        pointer[pos] += 1
    if backtracked:
        logger.info("corrective backtracking engaged while building a diagram for %s", g)
    return Mdd(points=frozenset(placed), source=g)


def verify_mdd(h: Mdd) -> bool:
    """Check all three diagram conditions against a fresh BFS profile."""
    g = h.source
    group = g.group
    n = group.order
    pts = h.points
    if len(pts) != n:
        return False
    profile = distance_profile(g)
    seen: set[int] = set()
    for a in pts:
        if len(a) != group.rank or any(x < 0 for x in a):
            return False
        for i, x in enumerate(a):
            if x > 0 and a[:i] + (x - 1,) + a[i + 1 :] not in pts:
                return False
        idx = group.index(phi(g, a))
        if idx in seen:
            return False
        seen.add(idx)
        if sum(a) != profile.distances[idx]:
            return False
    return len(seen) == n


def solid_diameter(h: Mdd) -> int:
    """d + max point norm; equals the digraph diameter plus d."""
    return h.source.degree + max(sum(a) for a in h.points)


def dilate_mdd(h: Mdd, m: int) -> Mdd:
    """Replace every cube by an m x ... x m block; dilate the source alongside."""
    if m < 1:
        raise ValueError(f"dilation factor must be >= 1, got {m}")
    if m == 1:
        return h
    d = h.source.degree
    pts = frozenset(
        tuple(m * x + o for x, o in zip(a, offs))
        for a in h.points
        for offs in product(range(m), repeat=d)
    )
    return Mdd(points=pts, source=dilate_digraph(h.source, m))


def extract_lshape(h: Mdd) -> LShape:
    """Unique (l, h, w, y) whose cube set equals the planar diagram.

    Rectangles are normalized to w = y = 0. Failure here signals a bug:
    planar diagrams are always L-shapes or rectangles.
    """
    if h.source.degree != 2:
        raise ValueError("L-shape extraction requires a degree-2 diagram")
    pts = h.points
    width = max(a[0] for a in pts) + 1
    heights = [0] * width
    for a in pts:
        heights[a[0]] += 1
    levels = sorted(set(heights), reverse=True)
    if len(levels) == 1:
        shape = LShape(width, levels[0], 0, 0)
    elif len(levels) == 2:
        high, low = levels
        w = heights.count(low)
        shape = LShape(width, high, w, high - low)
        if heights != [high] * (width - w) + [low] * w:
            raise ValueError("point set is not an L-shape")
    else:
        raise ValueError("point set is not an L-shape")
    if shape.cubes() != pts:
        raise ValueError("point set is not an L-shape")
    return shape


def _same_cube_parametrizations(shape: LShape) -> list[LShape]:
    """All (l, h, w, y) with the same cube set; rectangles have many."""
    if shape.w and shape.y:
        return [shape]
    out = []
    for w in range(shape.l):
        try:
            out.append(LShape(shape.l, shape.h, w, 0))
        except ValueError:
            pass
    for y in range(1, shape.h):
        try:
            out.append(LShape(shape.l, shape.h, 0, y))
        except ValueError:
            pass
    return out


def _conditions_hold(shape: LShape, g: CayleyDigraph) -> bool:
    group = g.group
    a, b = g.normalized_gens
    if shape.area != group.order:
        return False
    if gcd(gcd(shape.l, shape.h), gcd(shape.w, shape.y)) != group[0]:
        return False
    if group.scalar_mul(shape.l, a) != group.scalar_mul(shape.y, b):
        return False
    if group.scalar_mul(shape.w, a) != group.scalar_mul(shape.h, b):
        return False
    return (shape.l - shape.y) * (shape.h - shape.w) >= 0 and not (
        shape.l == shape.y and shape.h == shape.w
    )


def lshape_validate(shape: LShape, g: CayleyDigraph) -> bool:
    """The five arithmetic conditions tying a candidate L-shape to a digraph.

    A rectangle keeps its cube set under any (w, 0) or (0, y) parameter
    choice but the side conditions see those parameters, so the normalized
    form is accepted if any equivalent parametrization satisfies them.
    """
    if g.degree != 2:
        raise ValueError("L-shape validation requires a degree-2 digraph")
    return any(_conditions_hold(p, g) for p in _same_cube_parametrizations(shape))


def lshape_solid_diameter(shape: LShape) -> int:
    return shape.l + shape.h - min(shape.w, shape.y)


def lshape_tessellation_matrix(shape: LShape) -> Matrix:
    """Basis [(l, -y), (-w, h)] of the translation lattice tiling the plane."""
    return ((shape.l, -shape.w), (-shape.y, shape.h))


# Properness. A generating set is proper when its vectors are the columns of
# the unimodular row witness from a Smith decomposition of a basis of the
# digraph's relation lattice. Witnesses are not unique, so after the cheap
# sufficient checks this falls back to an exact existence test: the stored
# lifts T admit a witness iff some unimodular integer matrix is congruent to
# T entrywise, row i taken modulo s_i. Rows with s_i = 1 are free; the rest
# are enumerated modulo s_d, which is exact but only affordable for small
# residue spaces.

_COMPLETION_BUDGET = 200_000


def _witness_completion_exists(g: CayleyDigraph) -> bool | None:
    group = g.group
    d = group.rank
    cols = [list(t) for t in g.gens]
    t_mat = [[cols[j][i] for j in range(d)] for i in range(d)]
    big = group[-1]
    constrained = [i for i in range(d) if group[i] > 1]
    combos = 1
    for i in constrained:
        combos *= (big // group[i]) ** d
    if combos > _COMPLETION_BUDGET:
        return None
    free = [i for i in range(d) if group[i] == 1]
    row_choices = []
    for i in constrained:
        step = group[i]
        reps = [
            [t_mat[i][j] + step * k for k in range(big // step)] for j in range(d)
        ]
        row_choices.append([list(r) for r in product(*reps)])
    for pick in product(*row_choices):
        fixed = [list(row) for row in pick]
        if free:
            if gcd(minors_gcd(fixed, len(fixed)), big) == 1:
                return True
        else:
            if det(fixed) % big in (1, big - 1):
                return True
    return False


def is_proper(g: CayleyDigraph, tessellation: Matrix | None = None) -> bool | None:
    """Decide whether the generating set is proper.

    Fast paths: unimodular stored lifts are always proper; for degree 2 the
    canonical route goes through the extracted L-shape's tessellation matrix,
    and a caller-supplied tessellation matrix is used the same way for
    higher degrees. Otherwise an exact witness-existence test runs, and None
    is returned when that test would exceed its enumeration budget
    (undecidable here, distinct from False).
    """
    d = g.degree
    lifts = [[g.gens[j][i] for j in range(d)] for i in range(d)]
    if abs(det(lifts)) == 1:
        return True
    candidate_matrices = []
    if tessellation is not None:
        candidate_matrices.append(tessellation)
    if d == 2:
        candidate_matrices.append(lshape_tessellation_matrix(extract_lshape(build_mdd(g))))
    for m in candidate_matrices:
        if abs(det(m)) != g.order:
            continue
        group, gens = proper_generating_set(m)
        if tuple(group) != tuple(g.group):
            continue
        if all(
            g.group.reduce(u) == w
            for u, w in zip(gens, g.normalized_gens)
        ):
            return True
    return _witness_completion_exists(g)
