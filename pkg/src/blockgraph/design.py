"""2-(n,m,1) designs: canonical form, parsing, development, validation.

A design is stored densely: ``labels`` maps point indices to tokens and each
block is a sorted tuple of point indices, with the block list itself sorted.
Dense index assignment is an internal detail (built-in designs use the
structured-point order, parsed designs use first-appearance order), so two
designs are equal when they have the same parameters and the same blocks *as
sets of tokens*.
"""

from __future__ import annotations

import json
import re
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from .points import StructuredPoint, point_universe

_TOKEN_RE = re.compile(r"[A-Za-z0-9_]+\Z")


@dataclass(frozen=True)
class DesignParameters:
    """Replication and block counts for a hypothetical 2-(n,m,1) design."""

    n: int
    m: int
    lam: int
    r: Fraction
    b: Fraction

    @property
    def r_integral(self) -> bool:
        return self.r.denominator == 1

    @property
    def b_integral(self) -> bool:
        return self.b.denominator == 1

    @property
    def admissible(self) -> bool:
        return self.r_integral and self.b_integral


def admissibility(n: int, m: int) -> DesignParameters:
    """Exact r = (n-1)/(m-1) and b = n(n-1)/(m(m-1)) with integrality flags."""
    if m < 2 or n <= m:
        raise ValueError(f"need n > m >= 2, got n={n}, m={m}")
    return DesignParameters(
        n=n,
        m=m,
        lam=1,
        r=Fraction(n - 1, m - 1),
        b=Fraction(n * (n - 1), m * (m - 1)),
    )


@dataclass(frozen=True, eq=False)
class Design:
    """A block design in canonical form.

    ``blocks`` are sorted tuples of dense indices into ``labels``; the block
    list is sorted lexicographically.  Instances are immutable; construct via
    :func:`make_design`, :func:`parse_design` or :func:`develop_base_blocks`.
    """

    n: int
    m: int
    lam: int
    labels: tuple[str, ...]
    blocks: tuple[tuple[int, ...], ...]
    name: str = field(default="", compare=False)

    @cached_property
    def token_blocks(self) -> frozenset[frozenset[str]]:
        return frozenset(
            frozenset(self.labels[i] for i in blk) for blk in self.blocks
        )

    @cached_property
    def label_index(self) -> dict[str, int]:
        return {tok: i for i, tok in enumerate(self.labels)}

    @cached_property
    def block_masks(self) -> tuple[int, ...]:
        """Each block as a bitmask over point indices."""
        return tuple(sum(1 << i for i in blk) for blk in self.blocks)

    @cached_property
    def block_index(self) -> dict[tuple[int, ...], int]:
        return {blk: i for i, blk in enumerate(self.blocks)}

    @property
    def b(self) -> int:
        return len(self.blocks)

    def block_tokens(self, i: int) -> tuple[str, ...]:
        return tuple(self.labels[p] for p in self.blocks[i])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Design):
            return NotImplemented
        return (
            (self.n, self.m, self.lam) == (other.n, other.m, other.lam)
            and self.token_blocks == other.token_blocks
        )

    def __hash__(self) -> int:
        return hash((self.n, self.m, self.lam, self.token_blocks))

    def __repr__(self) -> str:
        tag = self.name or "design"
        return f"<{tag}: 2-({self.n},{self.m},{self.lam}), {self.b} blocks>"


def make_design(labels, token_blocks, lam=1, name="") -> Design:
    """Canonicalize labels + token blocks into a Design.

    Every block must consist of distinct known tokens; blocks of unequal size
    or duplicate blocks are rejected.
    """
    labels = tuple(labels)
    if len(set(labels)) != len(labels):
        raise ValueError("duplicate point labels")
    index = {tok: i for i, tok in enumerate(labels)}
    dense = []
    for blk in token_blocks:
        idx = []
        for tok in blk:
            if tok not in index:
                raise ValueError(f"unknown point token {tok!r}")
            idx.append(index[tok])
        if len(set(idx)) != len(idx):
            raise ValueError(f"duplicate point within block {tuple(blk)}")
        dense.append(tuple(sorted(idx)))
    sizes = {len(b) for b in dense}
    if len(sizes) > 1:
        raise ValueError(f"blocks of unequal size: {sorted(sizes)}")
    if len(set(dense)) != len(dense):
        seen = set()
        for blk in dense:
            if blk in seen:
                toks = tuple(labels[i] for i in blk)
                raise ValueError(f"duplicate block {toks}")
            seen.add(blk)
    m = sizes.pop() if sizes else 0
    return Design(
        n=len(labels),
        m=m,
        lam=lam,
        labels=labels,
        blocks=tuple(sorted(dense)),
        name=name,
    )


# ---------------------------------------------------------------------------
# blocklist / json formats

def parse_design(text: str, format: str = "blocklist", name: str = "") -> Design:
    """Parse a design from blocklist or json text into canonical form."""
    if format == "blocklist":
        return _parse_blocklist(text, name)
    if format == "json":
        return _parse_json(text, name)
    raise ValueError(f"unknown design format {format!r}")


def _parse_blocklist(text: str, name: str) -> Design:
    declared_n = None
    raw_blocks: list[tuple[str, ...]] = []
    labels: list[str] = []
    seen: set[str] = set()
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if declared_n is None and not raw_blocks:
            header = re.match(r"points:\s*(\d+)\Z", line)
            if header:
                declared_n = int(header.group(1))
                continue
        toks = tuple(line.split())
        for tok in toks:
            if not _TOKEN_RE.match(tok):
                raise ValueError(f"line {lineno}: unparseable token {tok!r}")
            if tok not in seen:
                seen.add(tok)
                labels.append(tok)
        raw_blocks.append(toks)
    if declared_n is not None and declared_n != len(labels):
        raise ValueError(
            f"header declares {declared_n} points but {len(labels)} distinct tokens occur"
        )
    return make_design(labels, raw_blocks, name=name)


def _parse_json(text: str, name: str) -> Design:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"bad json design: {exc}") from exc
    for key in ("n", "m", "lambda", "labels", "blocks"):
        if key not in doc:
            raise ValueError(f"json design missing key {key!r}")
    labels = [str(tok) for tok in doc["labels"]]
    if len(labels) != doc["n"]:
        raise ValueError("json design: n does not match number of labels")
    design = make_design(labels, doc["blocks"], lam=int(doc["lambda"]), name=name)
    if design.m != doc["m"] and design.blocks:
        raise ValueError(f"json design: m={doc['m']} but blocks have size {design.m}")
    return design


def serialize_design(design: Design, format: str = "blocklist") -> str:
    """Render a design; blocklist output is canonical in token space."""
    if format == "blocklist":
        lines = sorted(tuple(sorted(design.block_tokens(i))) for i in range(design.b))
        return "".join(" ".join(line) + "\n" for line in lines)
    if format == "json":
        doc = {
            "n": design.n,
            "m": design.m,
            "lambda": design.lam,
            "labels": list(design.labels),
            "blocks": [list(design.block_tokens(i)) for i in range(design.b)],
        }
        return json.dumps(doc, sort_keys=True, indent=2) + "\n"
    raise ValueError(f"unknown design format {format!r}")


# ---------------------------------------------------------------------------
# development of base blocks mod 13

def develop_base_blocks(base_blocks, modulus: int = 13, name: str = "") -> Design:
    """Develop base blocks through Z13: B_i^e for every shift e.

    Each shift adds e mod 13 to the residue value of every non-infinity
    point, leaving tags (and infinity) fixed.  The design of interest has
    full orbits, so a duplicate developed block signals corrupt input and is
    an error rather than silently deduplicated.
    """
    if modulus != 13:
        raise ValueError("structured points are defined over Z13")
    base = [tuple(blk) for blk in base_blocks]
    for blk in base:
        if not all(isinstance(p, StructuredPoint) for p in blk):
            raise ValueError("base blocks must consist of StructuredPoints")
        if len(set(blk)) != len(blk):
            raise ValueError("duplicate point within a base block")
    developed: set[frozenset[StructuredPoint]] = set()
    ordered: list[frozenset[StructuredPoint]] = []
    for i, blk in enumerate(base):
        for e in range(modulus):
            image = frozenset(p.shifted(e) for p in blk)
            if len(image) != len(blk):
                raise ValueError(f"block {i} collapsed under shift {e}")
            if image in developed:
                raise ValueError(
                    f"development produced a duplicate block (base {i}, shift {e})"
                )
            developed.add(image)
            ordered.append(image)
    support = sorted({p for blk in ordered for p in blk})
    labels = [p.token() for p in support]
    token_blocks = [sorted(p.token() for p in blk) for blk in ordered]
    return make_design(labels, token_blocks, name=name)


def structured_labels() -> tuple[str, ...]:
    """Tokens of the full 66-point universe in dense-index order."""
    return tuple(p.token() for p in point_universe())


# ---------------------------------------------------------------------------
# validation

@dataclass(frozen=True)
class Violation:
    """One failed design axiom: a pair, a point, or a block."""

    kind: str  # "pair" | "replication" | "block_size" | "parameters"
    subject: tuple
    count: int
    expected: object


@dataclass(frozen=True)
class ValidationReport:
    valid: bool
    params: DesignParameters | None
    violations: tuple[Violation, ...]

    def violations_of(self, kind: str) -> tuple[Violation, ...]:
        return tuple(v for v in self.violations if v.kind == kind)


def validate_2design(design: Design) -> ValidationReport:
    """Exhaustively check the 2-(n,m,1) axioms by direct counting.

    Every unordered point pair must lie in exactly one block, every block
    must have size m, and every point must lie in r = (n-1)/(m-1) blocks.
    Failures are reported, not raised.
    """
    violations: list[Violation] = []
    n, m = design.n, design.m
    if m < 2 or n <= m:
        params = None
        violations.append(Violation("parameters", (n, m), 0, "n > m >= 2"))
        if n == 0 and not design.blocks:
            return ValidationReport(True, None, ())
        return ValidationReport(False, None, tuple(violations))
    params = admissibility(n, m)

    for bi, blk in enumerate(design.blocks):
        if len(blk) != m:
            violations.append(Violation("block_size", (bi,), len(blk), m))

    pair_counts: Counter = Counter()
    repl: Counter = Counter()
    for blk in design.blocks:
        for p in blk:
            repl[p] += 1
        for p, q in combinations(blk, 2):
            pair_counts[(p, q)] += 1
    for p, q in combinations(range(n), 2):
        c = pair_counts.get((p, q), 0)
        if c != 1:
            violations.append(
                Violation("pair", (design.labels[p], design.labels[q]), c, 1)
            )
    if params.r_integral:
        r = int(params.r)
        for p in range(n):
            c = repl.get(p, 0)
            if c != r:
                violations.append(Violation("replication", (design.labels[p],), c, r))
    else:
        violations.append(Violation("parameters", (n, m), 0, "r integral"))

    valid = not violations and params.admissible and design.b == int(params.b)
    if not violations and not valid:
        violations.append(Violation("parameters", (n, m), design.b, params.b))
    return ValidationReport(valid, params, tuple(violations))
