"""Permutations in cycle notation, group closure, orbits, induced actions.

Permutations always act on points; actions on blocks and on cliques are
induced from the point action, never stored independently.  Groups are
materialized by breadth-first closure, which is cheap at the scale of this
toolkit (orders 39 and 5040 in practice) and guarded by a cap.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .design import Design
from .graph import BlockGraph

DEFAULT_CLOSURE_CAP = 10**6


class ClosureCapExceeded(RuntimeError):
    """Group closure grew past the configured element cap."""


@dataclass(frozen=True)
class Permutation:
    """A bijection of 0..n-1 stored as its image array."""

    images: tuple[int, ...]

    def __post_init__(self):
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError("images are not a bijection on 0..n-1")

    @staticmethod
    def identity(n: int) -> "Permutation":
        return Permutation(tuple(range(n)))

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, i: int) -> int:
        return self.images[i]

    def is_identity(self) -> bool:
        return all(im == i for i, im in enumerate(self.images))

    def then(self, other: "Permutation") -> "Permutation":
        """Apply self first, then other."""
        if other.degree != self.degree:
            raise ValueError("permutation domains differ")
        return Permutation(tuple(other.images[x] for x in self.images))

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, im in enumerate(self.images):
            inv[im] = i
        return Permutation(tuple(inv))

    def cycles(self) -> list[tuple[int, ...]]:
        """Nontrivial cycles, each rotated to start at its minimum."""
        seen = [False] * self.degree
        out = []
        for i in range(self.degree):
            if seen[i] or self.images[i] == i:
                seen[i] = True
                continue
            cyc = [i]
            seen[i] = True
            j = self.images[i]
            while j != i:
                cyc.append(j)
                seen[j] = True
                j = self.images[j]
            out.append(tuple(cyc))
        return out


def compose(p: Permutation, q: Permutation) -> Permutation:
    """p followed by q."""
    return p.then(q)


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def parse_cycles(text: str, labels) -> Permutation:
    """Parse cycle notation over point tokens; unlisted points stay fixed.

    Example: ``(0_0 10_1 1_2)(1_0 0_1 10_2)``.  Whitespace inside and
    between cycles is free; a point may appear in at most one cycle.
    """
    labels = tuple(labels)
    index = {tok: i for i, tok in enumerate(labels)}
    stripped = re.sub(r"\s+", " ", text).strip()
    body = re.fullmatch(r"(\s*\([^()]*\)\s*)*", stripped)
    if body is None:
        raise ValueError(f"malformed cycle notation: {text!r}")
    images = list(range(len(labels)))
    used: set[int] = set()
    for group in re.findall(r"\(([^()]*)\)", stripped):
        pts = []
        for tok in group.split():
            if tok not in index:
                raise ValueError(f"unknown point token {tok!r} in cycle")
            pts.append(index[tok])
        for p in pts:
            if p in used:
                raise ValueError(f"point {labels[p]!r} appears in more than one place")
            used.add(p)
        for a, b in zip(pts, pts[1:] + pts[:1]):
            images[a] = b
    return Permutation(tuple(images))


def format_cycles(p: Permutation, labels) -> str:
    cycs = p.cycles()
    if not cycs:
        return "()"
    return "".join("(" + " ".join(labels[x] for x in cyc) + ")" for cyc in cycs)


@dataclass(frozen=True)
class PermGroup:
    generators: tuple[Permutation, ...]
    elements: frozenset[Permutation]
    order: int
    abelian: bool


def close_group(generators, cap: int = DEFAULT_CLOSURE_CAP) -> PermGroup:
    """Breadth-first closure of the generators under composition."""
    if cap < 1:
        raise ValueError("cap must be at least 1")
    gens = tuple(generators)
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].degree
    if any(g.degree != n for g in gens):
        raise ValueError("generators act on different domains")
    elements = {Permutation.identity(n)} | set(gens)
    frontier = list(elements)
    while frontier:
        if len(elements) > cap:
            raise ClosureCapExceeded(f"closure exceeded cap of {cap} elements")
        new = []
        for g in gens:
            for h in frontier:
                prod = h.then(g)
                if prod not in elements:
                    elements.add(prod)
                    new.append(prod)
        frontier = new
    if len(elements) > cap:
        raise ClosureCapExceeded(f"closure exceeded cap of {cap} elements")
    abelian = all(
        g.then(h) == h.then(g) for i, g in enumerate(gens) for h in gens[i + 1:]
    )
    return PermGroup(gens, frozenset(elements), len(elements), abelian)


@dataclass(frozen=True)
class OrbitPartition:
    domain_size: int
    orbits: tuple[tuple[int, ...], ...]

    @property
    def lengths(self) -> tuple[int, ...]:
        return tuple(len(o) for o in self.orbits)


def orbit_partition(perms) -> OrbitPartition:
    """Orbits of the generated group on the perms' common domain.

    Orbits are listed by minimum element, each sorted, so the partition is
    deterministic.
    """
    perms = list(perms)
    if not perms:
        raise ValueError("need at least one permutation")
    n = perms[0].degree
    seen = [False] * n
    orbits = []
    for start in range(n):
        if seen[start]:
            continue
        orbit = {start}
        frontier = [start]
        seen[start] = True
        while frontier:
            x = frontier.pop()
            for g in perms:
                y = g(x)
                if not seen[y]:
                    seen[y] = True
                    orbit.add(y)
                    frontier.append(y)
        orbits.append(tuple(sorted(orbit)))
    return OrbitPartition(n, tuple(orbits))


# ---------------------------------------------------------------------------
# induced actions

def induced_block_action(design: Design, perm: Permutation) -> Permutation:
    """The permutation of block indices induced by a point permutation.

    Fails if some block's image is not a block, naming the first violation.
    """
    if perm.degree != design.n:
        raise ValueError("permutation domain does not match point count")
    images = []
    for i, blk in enumerate(design.blocks):
        img = tuple(sorted(perm(p) for p in blk))
        j = design.block_index.get(img)
        if j is None:
            toks = design.block_tokens(i)
            raise ValueError(
                f"not a design automorphism: image of block {i} {toks} is not a block"
            )
        images.append(j)
    return Permutation(tuple(images))


def induced_clique_action(block_perm: Permutation, cliques) -> Permutation:
    """The permutation of a clique list induced by a block permutation."""
    cliques = list(cliques)
    index = {c: i for i, c in enumerate(cliques)}
    images = []
    for i, members in enumerate(cliques):
        img = tuple(sorted(block_perm(v) for v in members))
        j = index.get(img)
        if j is None:
            raise ValueError(f"clique {i} is not mapped into the clique list")
        images.append(j)
    return Permutation(tuple(images))


def is_design_automorphism(design: Design, perm: Permutation) -> bool:
    if perm.degree != design.n:
        return False
    blocks = set(design.blocks)
    return all(
        tuple(sorted(perm(p) for p in blk)) in blocks for blk in design.blocks
    )


def is_graph_automorphism(graph: BlockGraph, perm: Permutation) -> bool:
    if perm.degree != graph.v:
        return False
    for u in range(graph.v):
        row = graph.rows[u]
        mapped = 0
        while row:
            w = (row & -row).bit_length() - 1
            row &= row - 1
            mapped |= 1 << perm(w)
        if mapped != graph.rows[perm(u)]:
            return False
    return True
