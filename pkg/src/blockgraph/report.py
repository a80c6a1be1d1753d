"""Analysis reports: census + group data, rendered as text or stable JSON.

The structured rendering uses sorted keys and only exact integer/string/bool
fields, so a report is byte-identical across runs and worker counts.  The
expected values for the three embedded 66-point designs are versioned here
and drive the ``--check-paper`` mode.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from . import catalog
from .cliques import CliqueCensus, census_report, core_restriction
from .design import Design, ValidationReport, validate_2design
from .perms import (
    PermGroup,
    Permutation,
    close_group,
    induced_block_action,
    induced_clique_action,
    is_design_automorphism,
    orbit_partition,
    parse_cycles,
)
from .autgroup import DEFAULT_NODE_LIMIT, graph_automorphism_group


@dataclass(frozen=True)
class GroupSection:
    source: str
    order: int
    abelian: bool
    point_orbit_lengths: tuple[int, ...]
    block_orbit_lengths: tuple[int, ...]
    canonical_clique_orbit_lengths: tuple[int, ...]
    noncanonical_clique_orbit_lengths: tuple[int, ...]


@dataclass(frozen=True)
class AutSection:
    order: int
    generator_count: int
    equals_design_group: bool


@dataclass(frozen=True)
class AnalysisReport:
    census: CliqueCensus
    validation: ValidationReport
    group: GroupSection | None
    automorphisms: AutSection | None


def _orbit_lengths(perms) -> tuple[int, ...]:
    return tuple(sorted(orbit_partition(perms).lengths, reverse=True))


def group_section(
    design: Design, census: CliqueCensus, generators, source: str
) -> GroupSection:
    """Close the generators and compute orbits on points/blocks/cliques.

    Generators must be design automorphisms; the block and clique actions
    are induced from the point action.
    """
    group = close_group(generators)
    block_perms = [induced_block_action(design, g) for g in group.generators]
    canonical = [r.members for r in census.records if r.classification.canonical]
    noncanonical = [r.members for r in census.records if not r.classification.canonical]
    sections = []
    for cliques in (canonical, noncanonical):
        if cliques:
            sections.append(
                _orbit_lengths(
                    [induced_clique_action(bp, cliques) for bp in block_perms]
                )
            )
        else:
            sections.append(())
    return GroupSection(
        source=source,
        order=group.order,
        abelian=group.abelian,
        point_orbit_lengths=_orbit_lengths(group.generators),
        block_orbit_lengths=_orbit_lengths(block_perms),
        canonical_clique_orbit_lengths=sections[0],
        noncanonical_clique_orbit_lengths=sections[1],
    )


def lift_to_design_automorphism(design: Design, block_perm: Permutation):
    """Point permutation inducing the given block permutation, if one exists.

    For a lam=1 design with replication >= 2, a point is determined by the
    set of blocks through it, so the lift (when it exists) is found by
    intersecting the images of the blocks through each point.
    """
    images = []
    full = (1 << design.n) - 1
    for p in range(design.n):
        common = full
        for i, blk in enumerate(design.blocks):
            if p in blk:
                common &= design.block_masks[block_perm(i)]
        if common.bit_count() != 1:
            return None
        images.append(common.bit_length() - 1)
    if sorted(images) != list(range(design.n)):
        return None
    perm = Permutation(tuple(images))
    if not is_design_automorphism(design, perm):
        return None
    if induced_block_action(design, perm) != block_perm:
        return None
    return perm


def automorphism_section(
    design: Design, census: CliqueCensus, node_limit: int = DEFAULT_NODE_LIMIT
) -> tuple[AutSection, PermGroup]:
    """Full block-graph automorphism group plus its design-group comparison.

    ``equals_design_group`` holds when every group element lifts to a design
    automorphism: design automorphisms embed injectively into the graph
    group, so total liftability forces the two groups to coincide.
    """
    cliques = [r.members for r in census.records]
    group = graph_automorphism_group(census.graph, cliques=cliques, node_limit=node_limit)
    lifted = [lift_to_design_automorphism(design, g) for g in group.generators]
    equals = all(p is not None for p in lifted)
    section = AutSection(
        order=group.order,
        generator_count=len(group.generators),
        equals_design_group=equals,
    )
    return section, group


def build_report(
    design: Design,
    workers: int = 1,
    generators=None,
    generator_source: str = "",
    include_aut: bool = False,
    node_limit: int = DEFAULT_NODE_LIMIT,
) -> AnalysisReport:
    validation = validate_2design(design)
    census = census_report(design, workers=workers)
    group = None
    if generators:
        group = group_section(design, census, generators, generator_source)
    aut = None
    if include_aut:
        aut, _ = automorphism_section(design, census, node_limit)
    return AnalysisReport(census, validation, group, aut)


def builtin_generators(design: Design, name: str) -> list[Permutation]:
    return [
        parse_cycles(text, design.labels)
        for text in catalog.builtin_generator_tokens(name)
    ]


# ---------------------------------------------------------------------------
# rendering

def _params_dict(validation: ValidationReport) -> dict:
    if validation.params is None:
        return {"replication": None, "block_count": None, "admissible": False}
    p = validation.params
    return {
        "replication": int(p.r) if p.r_integral else str(p.r),
        "block_count": int(p.b) if p.b_integral else str(p.b),
        "admissible": p.admissible,
    }


def report_document(report: AnalysisReport) -> dict:
    """The report as a plain dict of exact values (the structured schema)."""
    census = report.census
    design = census.design
    records = []
    for rec in census.records:
        witness = rec.classification.witness
        records.append(
            {
                "members": list(rec.members),
                "classification": rec.classification.kind,
                "witness": None if witness is None else design.labels[witness],
                "support_size": rec.support_size,
                "core_size": rec.core_size,
                "core_design": None
                if rec.restricted_params is None
                else {"n": rec.restricted_params.n, "m": rec.restricted_params.m},
                "subdesign": {
                    "admissible": bool(
                        rec.subdesign.candidate_params
                        and rec.subdesign.candidate_params.admissible
                    ),
                    "pair_coverage_ok": rec.subdesign.pair_coverage_ok,
                    "is_design": rec.subdesign.is_design,
                },
            }
        )
    doc = {
        "design": {
            "name": design.name,
            "n": design.n,
            "m": design.m,
            "lambda": design.lam,
            "blocks": design.b,
            "valid": report.validation.valid,
            **_params_dict(report.validation),
        },
        "srg": None
        if census.srg is None
        else {
            "v": census.srg.v,
            "k": census.srg.k,
            "lambda": census.srg.lambda_param,
            "mu": census.srg.mu,
            "r_eig": census.srg.r_eig,
            "s_eig": census.srg.s_eig,
        },
        "degenerate": census.degenerate,
        "delsarte_bound": census.delsarte,
        "clique_number": census.clique_number,
        "cliques": {
            "total": census.total,
            "canonical": census.canonical_count,
            "noncanonical": census.noncanonical_count,
            "records": records,
        },
        "group": None
        if report.group is None
        else {
            "source": report.group.source,
            "order": report.group.order,
            "abelian": report.group.abelian,
            "point_orbit_lengths": list(report.group.point_orbit_lengths),
            "block_orbit_lengths": list(report.group.block_orbit_lengths),
            "canonical_clique_orbit_lengths": list(
                report.group.canonical_clique_orbit_lengths
            ),
            "noncanonical_clique_orbit_lengths": list(
                report.group.noncanonical_clique_orbit_lengths
            ),
        },
        "automorphisms": None
        if report.automorphisms is None
        else {
            "order": report.automorphisms.order,
            "generator_count": report.automorphisms.generator_count,
            "equals_design_group": report.automorphisms.equals_design_group,
        },
    }
    return doc


def render_structured(report: AnalysisReport) -> str:
    return json.dumps(report_document(report), sort_keys=True, indent=2) + "\n"


def render_text(report: AnalysisReport) -> str:
    census = report.census
    design = census.design
    doc = report_document(report)
    lines = []
    name = design.name or "design"
    lines.append(
        f"{name}: 2-({design.n},{design.m},{design.lam}) with {design.b} blocks, "
        f"replication {doc['design']['replication']}, "
        f"{'valid' if report.validation.valid else 'INVALID'}"
    )
    if not report.validation.valid:
        for v in report.validation.violations[:10]:
            lines.append(f"  violation: {v.kind} {v.subject} count={v.count} expected={v.expected}")
        if len(report.validation.violations) > 10:
            lines.append(f"  ... {len(report.validation.violations) - 10} more")
    if census.srg is not None:
        s = census.srg
        lines.append(
            f"block graph: srg{s.as_tuple()} with eigenvalues {s.r_eig} and {s.s_eig}"
        )
        lines.append(f"delsarte bound: {census.delsarte}")
    else:
        lines.append(f"block graph: degenerate ({census.degenerate})")
    lines.append(f"clique number: {census.clique_number}")
    lines.append(
        f"maximum cliques: {census.total} = {census.canonical_count} canonical + "
        f"{census.noncanonical_count} non-canonical"
    )
    for rec in census.records:
        if rec.classification.canonical:
            continue
        core = (
            f"core {rec.core_size}"
            if rec.restricted_params is None
            else f"core {rec.core_size} forming 2-({rec.restricted_params.n},{rec.restricted_params.m},1)"
        )
        lines.append(
            f"  non-canonical {list(rec.members)}: support {rec.support_size}, {core}, "
            f"subdesign {'yes' if rec.subdesign.is_design else 'no'}"
        )
    if report.group is not None:
        g = report.group
        lines.append(
            f"group ({g.source}): order {g.order}, {'abelian' if g.abelian else 'nonabelian'}"
        )
        lines.append(f"  point orbit lengths: {list(g.point_orbit_lengths)}")
        lines.append(f"  block orbit lengths: {list(g.block_orbit_lengths)}")
        lines.append(
            f"  canonical clique orbit lengths: {list(g.canonical_clique_orbit_lengths)}"
        )
        lines.append(
            f"  non-canonical clique orbit lengths: {list(g.noncanonical_clique_orbit_lengths)}"
        )
    if report.automorphisms is not None:
        a = report.automorphisms
        lines.append(
            f"graph automorphism group: order {a.order} "
            f"({a.generator_count} generators), equals induced design group: "
            f"{'yes' if a.equals_design_group else 'NO'}"
        )
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# paper expectations for --check-paper

PAPER_EXPECTATIONS = {
    "main66": {
        "valid": True,
        "n": 66,
        "m": 6,
        "blocks": 143,
        "replication": 13,
        "srg": (143, 72, 36, 36),
        "s_eig": -6,
        "delsarte": 13,
        "clique_number": 13,
        "total": 80,
        "canonical": 66,
        "noncanonical": 14,
        "noncanonical_support_sizes": {39: 13, 26: 1},
        "noncanonical_core_sizes": {13: 13, 26: 1},
        "core_design": (13, 4),
        "point_orbits": (39, 13, 13, 1),
        "block_orbits": (39, 39, 39, 13, 13),
        "canonical_clique_orbits": (39, 13, 13, 1),
        "noncanonical_clique_orbits": (13, 1),
    },
    "appendixA66": {
        "valid": True,
        "n": 66,
        "m": 6,
        "blocks": 143,
        "replication": 13,
        "srg": (143, 72, 36, 36),
        "s_eig": -6,
        "delsarte": 13,
        "clique_number": 13,
        "total": 80,
        "canonical": 66,
        "noncanonical": 14,
        "core_design": (13, 4),
    },
    "appendixB66": {
        "valid": True,
        "n": 66,
        "m": 6,
        "blocks": 143,
        "replication": 13,
        "srg": (143, 72, 36, 36),
        "s_eig": -6,
        "delsarte": 13,
        "clique_number": 13,
        "total": 80,
        "canonical": 66,
        "noncanonical": 14,
        "core_design": (13, 4),
    },
}


def check_paper_claims(report: AnalysisReport, name: str) -> list[tuple[str, bool, str]]:
    """Compare a report against the embedded expected values for one design.

    Returns (claim, ok, actual) triples; an unknown design name is an error.
    """
    if name not in PAPER_EXPECTATIONS:
        raise ValueError(f"no embedded expectations for {name!r}")
    exp = PAPER_EXPECTATIONS[name]
    census = report.census
    design = census.design
    results = []

    def claim(label, expected, actual):
        results.append((f"{label} = {expected}", expected == actual, str(actual)))

    claim("valid", exp["valid"], report.validation.valid)
    claim("n", exp["n"], design.n)
    claim("m", exp["m"], design.m)
    claim("blocks", exp["blocks"], design.b)
    if report.validation.params is not None and report.validation.params.r_integral:
        claim("replication", exp["replication"], int(report.validation.params.r))
    else:
        claim("replication", exp["replication"], None)
    claim("srg", exp["srg"], None if census.srg is None else census.srg.as_tuple())
    claim("smallest eigenvalue", exp["s_eig"], None if census.srg is None else census.srg.s_eig)
    claim("delsarte bound", exp["delsarte"], census.delsarte)
    claim("clique number", exp["clique_number"], census.clique_number)
    claim("maximum cliques", exp["total"], census.total)
    claim("canonical cliques", exp["canonical"], census.canonical_count)
    claim("non-canonical cliques", exp["noncanonical"], census.noncanonical_count)
    noncanon = [r for r in census.records if not r.classification.canonical]
    claim(
        "non-canonical cliques without design structure",
        exp["noncanonical"],
        sum(1 for r in noncanon if not r.subdesign.is_design),
    )
    if "noncanonical_support_sizes" in exp:
        sizes: dict[int, int] = {}
        for r in noncanon:
            sizes[r.support_size] = sizes.get(r.support_size, 0) + 1
        claim("non-canonical support sizes", exp["noncanonical_support_sizes"], sizes)
    if "noncanonical_core_sizes" in exp:
        sizes = {}
        for r in noncanon:
            sizes[r.core_size] = sizes.get(r.core_size, 0) + 1
        claim("non-canonical core sizes", exp["noncanonical_core_sizes"], sizes)
    if "core_design" in exp:
        restrictions = {
            (r.restricted_params.n, r.restricted_params.m)
            for r in noncanon
            if r.restricted_params is not None
        }
        claim("core restrictions", {exp["core_design"]}, restrictions)
    if "point_orbits" in exp:
        g = report.group
        claim(
            "point orbit lengths",
            exp["point_orbits"],
            None if g is None else g.point_orbit_lengths,
        )
        claim(
            "block orbit lengths",
            exp["block_orbits"],
            None if g is None else g.block_orbit_lengths,
        )
        claim(
            "canonical clique orbit lengths",
            exp["canonical_clique_orbits"],
            None if g is None else g.canonical_clique_orbit_lengths,
        )
        claim(
            "non-canonical clique orbit lengths",
            exp["noncanonical_clique_orbits"],
            None if g is None else g.noncanonical_clique_orbit_lengths,
        )
    if name in catalog.APPENDIX_REPRESENTATIVE_CLIQUES:
        blocks_tokens, core_tokens = catalog.APPENDIX_REPRESENTATIVE_CLIQUES[name]
        members = tuple(
            sorted(
                design.block_index[
                    tuple(sorted(design.label_index[t] for t in blk.split()))
                ]
                for blk in blocks_tokens
            )
        )
        rec = next((r for r in census.records if r.members == members), None)
        results.append(
            (
                "representative clique enumerated and non-canonical",
                rec is not None and not rec.classification.canonical,
                "present" if rec is not None else "absent",
            )
        )
        if rec is not None:
            core = core_restriction(design, members)
            actual_tokens = tuple(sorted(design.labels[p] for p in core.core_points))
            expected_tokens = tuple(sorted(core_tokens))
            results.append(
                (
                    "representative clique intersecting points",
                    actual_tokens == expected_tokens,
                    " ".join(actual_tokens),
                )
            )
            results.append(
                (
                    "representative core restriction is 2-(13,4,1)",
                    core.restricted_params is not None
                    and (core.restricted_params.n, core.restricted_params.m) == (13, 4),
                    str(
                        None
                        if core.restricted_params is None
                        else (core.restricted_params.n, core.restricted_params.m)
                    ),
                )
            )
    return results
