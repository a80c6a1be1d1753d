"""Command-line front end.

Exit codes: 0 when every requested check holds, 1 when a verified claim
fails (invalid design, census mismatch, non-automorphism generator, budget
exhaustion), 2 on usage or parse errors.  Machine output uses 0-based block
indices; human-readable output uses point tokens.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import catalog, theory
from .autgroup import DEFAULT_NODE_LIMIT, SearchBudgetExceeded
from .cliques import (
    census_report,
    check_clique,
    core_restriction,
    point_multiplicity_profile,
    subdesign_test,
)
from .design import parse_design, serialize_design, validate_2design
from .graph import DegenerateGraphError, build_block_graph, delsarte_bound, verify_srg
from .perms import (
    format_cycles,
    induced_block_action,
    induced_clique_action,
    orbit_partition,
    parse_cycles,
)
from .points import parse_block
from .report import (
    automorphism_section,
    build_report,
    builtin_generators,
    check_paper_claims,
    render_structured,
    render_text,
)


def _add_design_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--builtin", choices=catalog.BUILTIN_NAMES, help="embedded design")
    src.add_argument("--input", metavar="FILE", help="design file (blocklist or json)")


def _load_design(args):
    if args.builtin:
        return catalog.builtin_design(args.builtin)
    text = Path(args.input).read_text()
    fmt = "json" if text.lstrip().startswith("{") else "blocklist"
    return parse_design(text, fmt, name=Path(args.input).stem)


def _load_generators(args, design):
    """Generators from --generators FILE, or the embedded ones for main66."""
    if getattr(args, "generators", None):
        perms = []
        for line in Path(args.generators).read_text().splitlines():
            line = line.split("#", 1)[0].strip()
            if line:
                perms.append(parse_cycles(line, design.labels))
        if not perms:
            raise ValueError(f"no generators found in {args.generators}")
        return perms, args.generators
    embedded = builtin_generators(design, getattr(args, "builtin", "") or "")
    if embedded:
        return embedded, "embedded generators"
    raise ValueError("no generator file given and no embedded generators for this design")


def _parse_expect(text: str) -> dict[str, int]:
    known = {"total", "canonical", "noncanonical", "size"}
    out = {}
    for item in text.split(","):
        key, sep, value = item.partition("=")
        key = key.strip()
        if not sep or key not in known or not value.strip().isdigit():
            raise ValueError(f"bad --expect item {item!r} (want key=integer)")
        out[key] = int(value)
    return out


def _load_clique_file(path: str) -> list[tuple[int, ...]]:
    cliques = []
    for lineno, line in enumerate(Path(path).read_text().splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            cliques.append(tuple(int(tok) for tok in line.split()))
        except ValueError as exc:
            raise ValueError(f"{path}:{lineno}: bad clique line") from exc
    return cliques


# ---------------------------------------------------------------------------
# subcommands

def cmd_verify(args) -> int:
    design = _load_design(args)
    validation = validate_2design(design)
    r = validation.params.r if validation.params else None
    print(f"design: 2-({design.n},{design.m},{design.lam}) with {design.b} blocks")
    if validation.valid:
        print(f"valid: yes (replication {r})")
    else:
        print("valid: NO")
        for v in validation.violations[:20]:
            print(f"  violation: {v.kind} {v.subject} count={v.count} expected={v.expected}")
        if len(validation.violations) > 20:
            print(f"  ... {len(validation.violations) - 20} more violations")
        return 1
    graph = build_block_graph(design)
    try:
        srg = verify_srg(graph)
        print(f"block graph: srg{srg.as_tuple()}, eigenvalues {srg.r_eig} and {srg.s_eig}")
        print(f"delsarte bound: {delsarte_bound(srg)}")
    except DegenerateGraphError as exc:
        note = "; design is symmetric" if design.b == design.n else ""
        print(f"block graph: degenerate ({exc}){note}")
    return 0


def cmd_cliques(args) -> int:
    design = _load_design(args)
    census = census_report(design, workers=args.workers)
    for rec in census.records:
        members = " ".join(str(i) for i in rec.members)
        if rec.classification.canonical:
            witness = design.labels[rec.classification.witness]
            print(f"{members}  # canonical at {witness}")
        else:
            print(f"{members}  # non-canonical")
    print(
        f"# {census.total} maximum cliques of size {census.clique_number}: "
        f"{census.canonical_count} canonical, {census.noncanonical_count} non-canonical"
    )
    if args.expect:
        expected = _parse_expect(args.expect)
        actual = {
            "total": census.total,
            "canonical": census.canonical_count,
            "noncanonical": census.noncanonical_count,
            "size": census.clique_number,
        }
        bad = {k: v for k, v in expected.items() if actual[k] != v}
        if bad:
            for k, v in sorted(bad.items()):
                print(f"EXPECT FAILED: {k}={v} but found {actual[k]}", file=sys.stderr)
            return 1
    return 0


def cmd_subdesign(args) -> int:
    design = _load_design(args)
    cliques = _load_clique_file(args.cliques)
    status = 0
    for k, members in enumerate(cliques):
        try:
            members = check_clique(design, members)
        except ValueError as exc:
            print(f"clique {k}: NOT A CLIQUE ({exc})")
            status = 1
            continue
        verdict = subdesign_test(design, members)
        core = core_restriction(design, members)
        profile = point_multiplicity_profile(design, members)
        multiplicities = sorted(set(profile.values()))
        admissible = verdict.candidate_params is not None and verdict.candidate_params.admissible
        core_text = f"core {len(core.core_points)}"
        if core.restricted_params is not None:
            core_text += (
                f" forming 2-({core.restricted_params.n},{core.restricted_params.m},1)"
            )
        print(
            f"clique {k}: support {verdict.support_size} "
            f"(candidate ({verdict.support_size},{design.m}) "
            f"{'admissible' if admissible else 'inadmissible'}), "
            f"pair coverage {'ok' if verdict.pair_coverage_ok else 'fails'}, "
            f"is_design {'yes' if verdict.is_design else 'no'}, "
            f"{core_text}, multiplicities {multiplicities}"
        )
    return status


def cmd_orbits(args) -> int:
    design = _load_design(args)
    try:
        generators, _source = _load_generators(args, design)
        block_perms = [induced_block_action(design, g) for g in generators]
    except ValueError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    if args.domain == "points":
        part = orbit_partition(generators)
        for orbit in part.orbits:
            print(" ".join(sorted(design.labels[p] for p in orbit)))
        print(f"# orbit lengths: {sorted(part.lengths, reverse=True)}")
    elif args.domain == "blocks":
        part = orbit_partition(block_perms)
        for orbit in part.orbits:
            print(" ".join(str(i) for i in orbit))
        print(f"# orbit lengths: {sorted(part.lengths, reverse=True)}")
    else:
        census = census_report(design, workers=args.workers)
        for label, members_list in (
            ("canonical", [r.members for r in census.records if r.classification.canonical]),
            ("non-canonical", [r.members for r in census.records if not r.classification.canonical]),
        ):
            if not members_list:
                print(f"# no {label} maximum cliques")
                continue
            actions = [induced_clique_action(bp, members_list) for bp in block_perms]
            part = orbit_partition(actions)
            print(f"# {label} clique orbit lengths: {sorted(part.lengths, reverse=True)}")
            for orbit in part.orbits:
                print(
                    " | ".join(
                        " ".join(str(v) for v in members_list[i]) for i in orbit
                    )
                )
    return 0


def cmd_aut(args) -> int:
    design = _load_design(args)
    census = census_report(design, workers=args.workers)
    try:
        section, group = automorphism_section(design, census, node_limit=args.node_limit)
    except SearchBudgetExceeded as exc:
        print(f"search budget exceeded ({exc.limit} nodes); results are PARTIAL", file=sys.stderr)
        for g in exc.generators:
            print(format_cycles(g, [str(i) for i in range(census.graph.v)]))
        return 1
    labels = [str(i) for i in range(census.graph.v)]
    print(f"block-graph automorphism group order: {section.order}")
    print(f"generators ({section.generator_count}, acting on block indices):")
    for g in group.generators:
        print(f"  {format_cycles(g, labels)}")
    print(
        "equals induced design automorphism group: "
        + ("yes" if section.equals_design_group else "no (graph group is larger)")
    )
    return 0


def cmd_report(args) -> int:
    design = _load_design(args)
    generators = None
    source = ""
    if args.builtin:
        embedded = builtin_generators(design, args.builtin)
        if embedded:
            generators, source = embedded, "embedded generators"
    report = build_report(
        design,
        workers=args.workers,
        generators=generators,
        generator_source=source,
        include_aut=args.aut,
        node_limit=args.node_limit,
    )
    if args.format == "structured":
        sys.stdout.write(render_structured(report))
    else:
        sys.stdout.write(render_text(report))
    status = 0 if report.validation.valid else 1
    if args.check_paper:
        if not args.builtin or args.builtin not in ("main66", "appendixA66", "appendixB66"):
            print("--check-paper needs one of the embedded 66-point designs", file=sys.stderr)
            return 2
        claims = check_paper_claims(report, args.builtin)
        for label, ok, actual in claims:
            print(f"{'PASS' if ok else 'FAIL'}: {label} (found {actual})", file=sys.stderr)
            if not ok:
                status = 1
    return status


def cmd_theory(args) -> int:
    if args.theory_cmd == "gm":
        threshold = theory.gm_threshold(args.m)
        flag = theory.only_canonical_guaranteed(args.n, args.m)
        print(f"threshold m^3-2m^2+2m = {threshold}")
        print(f"n = {args.n}: only canonical maximum cliques guaranteed: {'yes' if flag else 'no'}")
    elif args.theory_cmd == "denniston":
        params = theory.denniston_params(args.r, args.s)
        flag = theory.denniston_may_have_noncanonical(args.r, args.s)
        print(f"denniston({args.r},{args.s}): 2-({params.n},{params.m},1)")
        print(f"may have non-canonical maximum cliques (s < 2r): {'yes' if flag else 'no'}")
    elif args.theory_cmd == "family":
        params = theory.family_params(args.family, *args.args)
        print(f"{params.family}{params.args}: 2-({params.n},{params.m},1)")
        print(f"gm threshold for m={params.m}: {theory.gm_threshold(params.m)}")
    elif args.theory_cmd == "squares":
        squares = theory.squares_mod(args.p)
        print(" ".join(str(x) for x in squares.elements))
    elif args.theory_cmd == "diffset":
        s = theory.ResidueSet.of(args.p, args.set)
        diffs = theory.difference_multiset(s)
        for d in sorted(diffs):
            print(f"{d}: {diffs[d]}")
    elif args.theory_cmd == "translate":
        s = theory.ResidueSet.of(args.p, args.set)
        print(theory.translate_intersection(s, args.d))
    elif args.theory_cmd == "certificate":
        block = parse_block(args.block)
        cert = theory.orbit_clique_certificate(block)
        print(f"a-part: {list(cert.a_part.elements)}  b-part: {list(cert.b_part.elements)}")
        for d, total in sorted(cert.shift_totals.items()):
            print(f"shift {d}: intersection {total}")
        print(f"pairwise intersecting: {'yes' if cert.pairwise_intersecting else 'no'}")
        return 0 if cert.pairwise_intersecting else 1
    return 0


def cmd_export(args) -> int:
    design = _load_design(args)
    sys.stdout.write(serialize_design(design, args.format))
    return 0


# ---------------------------------------------------------------------------

def _int_list(text: str) -> list[int]:
    return [int(x) for x in text.split(",") if x.strip() != ""]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="blockgraph",
        description="Exact analysis of 2-(n,m,1) designs and their block graphs.",
    )
    sub = parser.add_subparsers(dest="cmd", required=True)

    p = sub.add_parser("verify", help="validate a design and its SRG parameters")
    _add_design_source(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cliques", help="enumerate and classify maximum cliques")
    _add_design_source(p)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--expect", metavar="K=V,...", help="e.g. total=80,canonical=66")
    p.set_defaults(func=cmd_cliques)

    p = sub.add_parser("subdesign", help="test cliques for subdesign structure")
    _add_design_source(p)
    p.add_argument("--cliques", required=True, metavar="FILE",
                   help="one clique per line, space-separated 0-based block indices")
    p.set_defaults(func=cmd_subdesign)

    p = sub.add_parser("orbits", help="orbits of a generated group")
    _add_design_source(p)
    p.add_argument("--generators", metavar="FILE",
                   help="one permutation per line in token cycle notation "
                        "(defaults to the embedded generators for main66)")
    p.add_argument("--domain", choices=("points", "blocks", "cliques"), default="points")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("aut", help="full block-graph automorphism group")
    _add_design_source(p)
    p.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_aut)

    p = sub.add_parser("report", help="full analysis report")
    _add_design_source(p)
    p.add_argument("--format", choices=("text", "structured"), default="text")
    p.add_argument("--check-paper", action="store_true",
                   help="compare against the embedded expected values")
    p.add_argument("--aut", action="store_true",
                   help="include the graph automorphism search in the report")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--node-limit", type=int, default=DEFAULT_NODE_LIMIT)
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("export", help="serialize a design (blocklist or json)")
    _add_design_source(p)
    p.add_argument("--format", choices=("blocklist", "json"), default="blocklist")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("theory", help="threshold and residue arithmetic")
    tsub = p.add_subparsers(dest="theory_cmd", required=True)
    t = tsub.add_parser("gm", help="Godsil-Meagher threshold")
    t.add_argument("--n", type=int, required=True)
    t.add_argument("--m", type=int, required=True)
    t = tsub.add_parser("denniston", help="Denniston parameter predicate")
    t.add_argument("--r", type=int, required=True)
    t.add_argument("--s", type=int, required=True)
    t = tsub.add_parser("family", help="design family parameters")
    t.add_argument("--family", choices=("affine", "projective", "unital", "denniston"),
                   required=True)
    t.add_argument("--args", type=_int_list, required=True, metavar="A,B",
                   help="family arguments, e.g. 3,2 for projective d=3 q=2")
    t = tsub.add_parser("squares", help="nonzero quadratic residues mod p")
    t.add_argument("--p", type=int, required=True)
    t = tsub.add_parser("diffset", help="difference multiset of a residue set")
    t.add_argument("--p", type=int, required=True)
    t.add_argument("--set", type=_int_list, required=True, metavar="A,B,C")
    t = tsub.add_parser("translate", help="|(d+S) ∩ S| for a residue set")
    t.add_argument("--p", type=int, required=True)
    t.add_argument("--set", type=_int_list, required=True, metavar="A,B,C")
    t.add_argument("--d", type=int, required=True)
    t = tsub.add_parser("certificate", help="orbit-clique certificate of a base block")
    t.add_argument("--block", required=True, metavar="TOKENS",
                   help='e.g. "2_a 6_a 5_a 4_b 12_b 10_b"')
    p.set_defaults(func=cmd_theory)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
