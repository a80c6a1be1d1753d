"""Exhaustive maximum-clique census and subdesign analysis.

The search is a branch-and-bound over bitset candidate sets with greedy
colouring bounds (vertices branched in decreasing-degree order, ties by
index, so runs are reproducible).  Enumeration keeps every branch that can
still reach the maximum size, so the census is complete; completeness is
cross-checked against brute force in the test suite.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations

from .design import Design, DesignParameters, admissibility, make_design, validate_2design
from .graph import (
    BlockGraph,
    DegenerateGraphError,
    SrgParams,
    build_block_graph,
    delsarte_bound,
    verify_srg,
)


def _colour_order(candidates: int, rows) -> list[tuple[int, int]]:
    """Greedy colouring of the candidate set.

    Returns (vertex, colour) pairs in colour-ascending order; the number of
    colours bounds the largest clique inside the candidates.
    """
    order = []
    colour = 0
    uncoloured = candidates
    while uncoloured:
        colour += 1
        avail = uncoloured
        while avail:
            v = (avail & -avail).bit_length() - 1
            avail &= avail - 1
            order.append((v, colour))
            avail &= ~rows[v]
            uncoloured &= ~(1 << v)
    return order


def _branch_order(graph: BlockGraph) -> list[int]:
    return sorted(range(graph.v), key=lambda u: (-graph.degree(u), u))


class _BoundAttained(Exception):
    pass


def clique_number(graph: BlockGraph, upper_bound: int | None = None) -> int:
    """Exact clique number by branch and bound.

    ``upper_bound`` (e.g. the Delsarte bound) is used as an early exit: the
    search stops as soon as a clique attaining it is found.
    """
    if graph.v == 0:
        return 0
    best = 0
    rows = graph.rows

    def expand(size: int, candidates: int) -> None:
        nonlocal best
        for v, c in reversed(_colour_order(candidates, rows)):
            if size + c <= best:
                return
            if size + 1 > best:
                best = size + 1
                if upper_bound is not None and best >= upper_bound:
                    raise _BoundAttained
            rest = candidates & rows[v]
            if rest:
                expand(size + 1, rest)
            candidates &= ~(1 << v)

    root = 0
    for v in _branch_order(graph):
        root |= 1 << v
    try:
        expand(0, root)
    except _BoundAttained:
        pass
    return best


def _collect_at_size(rows, start: int, candidates: int, target: int, out: list) -> None:
    """Collect every clique of exactly ``target`` vertices extending [start]."""
    stack = [start]

    def expand(candidates: int) -> None:
        for v, c in reversed(_colour_order(candidates, rows)):
            if len(stack) + c < target:
                return
            stack.append(v)
            if len(stack) == target:
                out.append(tuple(sorted(stack)))
            else:
                rest = candidates & rows[v]
                if rest:
                    expand(rest)
            stack.pop()
            candidates &= ~(1 << v)

    if target == 1:
        out.append((start,))
    else:
        expand(candidates)


def _roots_job(args) -> list:
    rows, target, jobs = args
    out: list = []
    for start, candidates in jobs:
        _collect_at_size(rows, start, candidates, target, out)
    return out


def enumerate_maximum_cliques(
    graph: BlockGraph, size: int | None = None, workers: int = 1
) -> list[tuple[int, ...]]:
    """All cliques of maximum size, sorted lexicographically.

    The search space is split over root vertices (each clique is rooted at
    its first member in branch order), which is also the unit of optional
    multi-process parallelism; results are merged and sorted, so the output
    is identical for any worker count.
    """
    if graph.v == 0:
        return []
    target = clique_number(graph) if size is None else size
    order = _branch_order(graph)
    position = [0] * graph.v
    for pos, v in enumerate(order):
        position[v] = pos
    jobs = []
    for pos, v in enumerate(order):
        later = 0
        row = graph.rows[v]
        while row:
            u = (row & -row).bit_length() - 1
            row &= row - 1
            if position[u] > pos:
                later |= 1 << u
        if later.bit_count() + 1 >= target:
            jobs.append((v, later))

    found: list[tuple[int, ...]] = []
    if workers <= 1 or len(jobs) < 2:
        for start, candidates in jobs:
            _collect_at_size(graph.rows, start, candidates, target, found)
    else:
        chunks = [jobs[i::workers] for i in range(workers)]
        payload = [(graph.rows, target, chunk) for chunk in chunks if chunk]
        with ProcessPoolExecutor(max_workers=len(payload)) as pool:
            for part in pool.map(_roots_job, payload):
                found.extend(part)
    return sorted(found)


# ---------------------------------------------------------------------------
# clique structure relative to the design

@dataclass(frozen=True)
class Classification:
    kind: str  # "canonical" | "non-canonical"
    witness: int | None  # point contained in every member block

    @property
    def canonical(self) -> bool:
        return self.kind == "canonical"


@dataclass(frozen=True)
class CoreRestriction:
    core_points: tuple[int, ...]
    restricted_blocks: tuple[tuple[int, ...], ...]
    restricted_params: DesignParameters | None  # set iff restriction is a 2-design


@dataclass(frozen=True)
class SubdesignVerdict:
    support: tuple[int, ...]
    support_size: int
    candidate_params: DesignParameters | None
    pair_coverage_ok: bool
    is_design: bool


def check_clique(design: Design, members) -> tuple[int, ...]:
    """Validate that the member blocks pairwise intersect; return sorted members."""
    members = tuple(sorted(members))
    if len(set(members)) != len(members):
        raise ValueError("repeated block index in clique")
    masks = design.block_masks
    for i in members:
        if not 0 <= i < len(masks):
            raise ValueError(f"block index out of range: {i}")
    for i, j in combinations(members, 2):
        if not masks[i] & masks[j]:
            raise ValueError(f"blocks {i} and {j} do not intersect")
    return members


def classify_clique(design: Design, members) -> Classification:
    """Canonical iff one point lies in every member block (unique for lam=1)."""
    members = check_clique(design, members)
    common = (1 << design.n) - 1
    for i in members:
        common &= design.block_masks[i]
    if common:
        return Classification("canonical", (common & -common).bit_length() - 1)
    return Classification("non-canonical", None)


def clique_support(design: Design, members) -> tuple[int, ...]:
    """Union of the member blocks' points."""
    pts = 0
    for i in members:
        pts |= design.block_masks[i]
    out = []
    while pts:
        out.append((pts & -pts).bit_length() - 1)
        pts &= pts - 1
    return tuple(out)


def point_multiplicity_profile(design: Design, members) -> dict[int, int]:
    """How many member blocks each support point lies in."""
    counts: Counter = Counter()
    for i in members:
        for p in design.blocks[i]:
            counts[p] += 1
    return dict(sorted(counts.items()))


def core_restriction(design: Design, members) -> CoreRestriction:
    """Restrict the clique's blocks to its core (points in >= 2 member blocks).

    If the restricted blocks form a uniform 2-design on the core, its
    parameters are reported; degenerate or non-uniform restrictions simply
    carry no parameters.
    """
    profile = point_multiplicity_profile(design, members)
    core = tuple(sorted(p for p, c in profile.items() if c >= 2))
    core_set = set(core)
    restricted = tuple(
        tuple(p for p in design.blocks[i] if p in core_set) for i in members
    )
    params = None
    sizes = {len(blk) for blk in restricted}
    if len(sizes) == 1 and core:
        m_r = sizes.pop()
        if m_r >= 2 and len(core) > m_r:
            tokens = [design.labels[p] for p in core]
            try:
                sub = make_design(
                    tokens, [[design.labels[p] for p in blk] for blk in restricted]
                )
            except ValueError:
                sub = None
            if sub is not None and validate_2design(sub).valid:
                params = admissibility(len(core), m_r)
    return CoreRestriction(core, restricted, params)


def subdesign_test(design: Design, members) -> SubdesignVerdict:
    """Does the clique have a design structure on the union of its blocks?

    Combines the admissibility of (|support|, m), which is a fast arithmetic
    negative, with a definitive pair-coverage count over the support.
    """
    members = check_clique(design, members)
    support = clique_support(design, members)
    ns = len(support)
    counts: Counter = Counter()
    for i in members:
        for pair in combinations(design.blocks[i], 2):
            counts[pair] += 1
    coverage_ok = bool(members) and all(
        counts.get(pair, 0) == 1 for pair in combinations(support, 2)
    ) and all(c == 1 for c in counts.values())
    params = None
    if ns > design.m >= 2:
        params = admissibility(ns, design.m)
    is_design = (
        params is not None
        and params.admissible
        and coverage_ok
        and len(members) == int(params.b)
    )
    return SubdesignVerdict(support, ns, params, coverage_ok, is_design)


# ---------------------------------------------------------------------------
# full census

@dataclass(frozen=True)
class CliqueRecord:
    members: tuple[int, ...]
    classification: Classification
    support_size: int
    core_size: int
    restricted_params: DesignParameters | None
    subdesign: SubdesignVerdict


@dataclass(frozen=True)
class CliqueCensus:
    design: Design
    graph: BlockGraph
    srg: SrgParams | None
    degenerate: str | None
    delsarte: int | None
    clique_number: int
    records: tuple[CliqueRecord, ...]

    @property
    def total(self) -> int:
        return len(self.records)

    @property
    def canonical_count(self) -> int:
        return sum(1 for r in self.records if r.classification.canonical)

    @property
    def noncanonical_count(self) -> int:
        return self.total - self.canonical_count


def census_report(design: Design, workers: int = 1) -> CliqueCensus:
    """Run the full pipeline: graph, SRG, bound, enumeration, per-clique analysis."""
    graph = build_block_graph(design)
    srg = None
    degenerate = None
    bound = None
    try:
        srg = verify_srg(graph)
        bound = delsarte_bound(srg)
    except DegenerateGraphError as exc:
        degenerate = str(exc)
    omega = clique_number(graph, upper_bound=bound)
    cliques = enumerate_maximum_cliques(graph, size=omega, workers=workers)
    records = []
    for members in cliques:
        cls = classify_clique(design, members)
        core = core_restriction(design, members)
        verdict = subdesign_test(design, members)
        records.append(
            CliqueRecord(
                members=members,
                classification=cls,
                support_size=verdict.support_size,
                core_size=len(core.core_points),
                restricted_params=core.restricted_params,
                subdesign=verdict,
            )
        )
    return CliqueCensus(
        design=design,
        graph=graph,
        srg=srg,
        degenerate=degenerate,
        delsarte=bound,
        clique_number=omega,
        records=tuple(records),
    )
