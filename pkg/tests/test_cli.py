import json

import pytest

from blockgraph import builtin_design, serialize_design
from blockgraph.cli import main

from conftest import PLANE_CLIQUE_BLOCKS, members_from_tokens


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


# ---------------------------------------------------------------------------
# verify

def test_verify_main66(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "main66")
    assert code == 0
    assert "srg(143, 72, 36, 36)" in out
    assert "delsarte bound: 13" in out
    assert "valid: yes (replication 13)" in out


def test_verify_fano_degenerate(capsys):
    code, out, _ = run(capsys, "verify", "--builtin", "fano")
    assert code == 0
    assert "degenerate" in out


def test_verify_duplicate_block_file(tmp_path, capsys):
    bad = tmp_path / "broken.blk"
    bad.write_text("1 2 3\n1 2 3\n")
    code, _, err = run(capsys, "verify", "--input", str(bad))
    assert code == 2
    assert "duplicate block" in err


def test_verify_invalid_design_file(tmp_path, capsys):
    main66 = builtin_design("main66")
    lines = serialize_design(main66).splitlines()
    trimmed = tmp_path / "short.blk"
    trimmed.write_text("\n".join(lines[1:]) + "\n")
    code, out, _ = run(capsys, "verify", "--input", str(trimmed))
    assert code == 1
    assert "valid: NO" in out


def test_missing_source_is_usage_error(capsys):
    code, _, _ = run(capsys, "verify")
    assert code == 2


# ---------------------------------------------------------------------------
# cliques

def test_cliques_expected_counts(capsys):
    code, out, _ = run(
        capsys, "cliques", "--builtin", "main66", "--expect", "total=80,canonical=66"
    )
    assert code == 0
    lines = [l for l in out.splitlines() if l and not l.startswith("#")]
    assert len(lines) == 80
    assert sum("non-canonical" in l for l in lines) == 14


def test_cliques_expect_mismatch(capsys):
    code, _, err = run(capsys, "cliques", "--builtin", "main66", "--expect", "total=81")
    assert code == 1
    assert "EXPECT FAILED" in err


def test_cliques_appendix_b(capsys):
    code, _, _ = run(
        capsys, "cliques", "--builtin", "appendixB66", "--expect",
        "total=80,canonical=66",
    )
    assert code == 0


def test_cliques_ag23(capsys):
    code, out, _ = run(
        capsys, "cliques", "--builtin", "ag23", "--expect",
        "total=81,canonical=9,size=4",
    )
    assert code == 0


def test_cliques_bad_expect_key(capsys):
    code, _, err = run(capsys, "cliques", "--builtin", "ag23", "--expect", "cake=3")
    assert code == 2
    assert "bad --expect" in err


# ---------------------------------------------------------------------------
# subdesign

def test_subdesign_plane_clique(tmp_path, capsys):
    main66 = builtin_design("main66")
    members = members_from_tokens(main66, PLANE_CLIQUE_BLOCKS)
    path = tmp_path / "plane.cliques"
    path.write_text(" ".join(str(i) for i in members) + "\n")
    code, out, _ = run(
        capsys, "subdesign", "--builtin", "main66", "--cliques", str(path)
    )
    assert code == 0
    assert "support 39" in out
    assert "inadmissible" in out
    assert "is_design no" in out
    assert "core 13 forming 2-(13,4,1)" in out


def test_subdesign_orbit_clique(tmp_path, capsys):
    from conftest import orbit_clique_members

    main66 = builtin_design("main66")
    members = orbit_clique_members(main66)
    path = tmp_path / "orbit.cliques"
    path.write_text(" ".join(str(i) for i in members) + "\n")
    code, out, _ = run(
        capsys, "subdesign", "--builtin", "main66", "--cliques", str(path)
    )
    assert code == 0
    assert "support 26" in out
    assert "is_design no" in out
    assert "multiplicities [3]" in out


def test_subdesign_rejects_non_clique(tmp_path, capsys):
    main66 = builtin_design("main66")
    masks = main66.block_masks
    other = next(j for j in range(main66.b) if not masks[0] & masks[j])
    path = tmp_path / "notaclique.cliques"
    path.write_text(f"0 {other}\n")
    code, out, _ = run(
        capsys, "subdesign", "--builtin", "main66", "--cliques", str(path)
    )
    assert code == 1
    assert "NOT A CLIQUE" in out
    assert "do not intersect" in out


# ---------------------------------------------------------------------------
# orbits

def test_orbits_points_with_embedded_generators(capsys):
    code, out, _ = run(capsys, "orbits", "--builtin", "main66", "--domain", "points")
    assert code == 0
    assert "orbit lengths: [39, 13, 13, 1]" in out


def test_orbits_blocks(capsys):
    code, out, _ = run(capsys, "orbits", "--builtin", "main66", "--domain", "blocks")
    assert code == 0
    assert "orbit lengths: [39, 39, 39, 13, 13]" in out


def test_orbits_cliques(capsys):
    code, out, _ = run(capsys, "orbits", "--builtin", "main66", "--domain", "cliques")
    assert code == 0
    assert "# canonical clique orbit lengths: [39, 13, 13, 1]" in out
    assert "# non-canonical clique orbit lengths: [13, 1]" in out


def test_orbits_generator_file(tmp_path, capsys):
    # a file with the real generators reproduces the embedded-generator run
    from blockgraph.catalog import GENERATOR_FIBRE_ROTATION, GENERATOR_RESIDUE_SHIFT

    gens = tmp_path / "gens.txt"
    gens.write_text(f"# generators\n{GENERATOR_FIBRE_ROTATION}\n{GENERATOR_RESIDUE_SHIFT}\n")
    code, out, _ = run(
        capsys, "orbits", "--builtin", "main66", "--generators", str(gens),
        "--domain", "points",
    )
    assert code == 0
    assert "orbit lengths: [39, 13, 13, 1]" in out


def test_orbits_rejects_fibre_cycle(tmp_path, capsys):
    # a bare 13-cycle on one fibre permutes points but is not a design
    # automorphism, so orbit computation must refuse it for every domain
    gens = tmp_path / "gens.txt"
    gens.write_text("(" + " ".join(f"{v}_0" for v in range(13)) + ")\n")
    code, _, err = run(
        capsys, "orbits", "--builtin", "main66", "--generators", str(gens),
        "--domain", "points",
    )
    assert code == 1
    assert "not a design automorphism" in err


def test_orbits_non_automorphism_generator(tmp_path, capsys):
    gens = tmp_path / "gens.txt"
    gens.write_text("(0_0 1_0)\n")
    code, _, err = run(
        capsys, "orbits", "--builtin", "main66", "--generators", str(gens),
        "--domain", "points",
    )
    assert code == 1
    assert "not a design automorphism" in err


def test_orbits_without_generators_for_plain_design(capsys):
    code, _, err = run(capsys, "orbits", "--builtin", "fano", "--domain", "points")
    assert code == 1
    assert "no generator file" in err


# ---------------------------------------------------------------------------
# aut

def test_aut_fano(capsys):
    code, out, _ = run(capsys, "aut", "--builtin", "fano")
    assert code == 0
    assert "order: 5040" in out


def test_aut_main66(capsys):
    code, out, _ = run(capsys, "aut", "--builtin", "main66")
    assert code == 0
    assert "order: 39" in out
    assert "equals induced design automorphism group: yes" in out


def test_aut_budget_exhaustion(capsys):
    code, _, err = run(capsys, "aut", "--builtin", "main66", "--node-limit", "1")
    assert code == 1
    assert "PARTIAL" in err


# ---------------------------------------------------------------------------
# report

def test_report_check_paper_main66(capsys):
    code, out, err = run(capsys, "report", "--builtin", "main66", "--check-paper")
    assert code == 0
    assert "maximum cliques: 80 = 66 canonical + 14 non-canonical" in out
    assert "FAIL" not in err
    assert err.count("PASS") >= 15


def test_report_structured_deterministic_across_workers(capsys):
    code1, out1, _ = run(capsys, "report", "--builtin", "main66", "--format", "structured")
    code2, out2, _ = run(
        capsys, "report", "--builtin", "main66", "--format", "structured",
        "--workers", "2",
    )
    assert code1 == code2 == 0
    assert out1 == out2
    doc = json.loads(out1)
    assert doc["cliques"]["total"] == 80
    assert doc["design"]["valid"] is True
    assert doc["group"]["order"] == 39


def test_report_ag23(capsys):
    code, out, _ = run(capsys, "report", "--builtin", "ag23")
    assert code == 0
    assert "maximum cliques: 81 = 9 canonical + 72 non-canonical" in out


def test_report_pg23_degenerate(capsys):
    code, out, _ = run(capsys, "report", "--builtin", "pg23")
    assert code == 0
    assert "degenerate (complete graph)" in out


def test_report_check_paper_needs_66_design(capsys):
    code, _, err = run(capsys, "report", "--builtin", "ag23", "--check-paper")
    assert code == 2


@pytest.mark.parametrize("name", ["appendixA66", "appendixB66"])
def test_report_check_paper_appendix(name, capsys):
    code, _, err = run(capsys, "report", "--builtin", name, "--check-paper")
    assert code == 0
    assert "FAIL" not in err
    assert "representative clique intersecting points" in err


def test_report_with_aut_section(capsys):
    code, out, _ = run(capsys, "report", "--builtin", "appendixA66", "--aut")
    assert code == 0
    assert "graph automorphism group: order 39" in out


# ---------------------------------------------------------------------------
# export and theory

def test_export_round_trip(tmp_path, capsys):
    code, out, _ = run(capsys, "export", "--builtin", "fano", "--format", "blocklist")
    assert code == 0
    path = tmp_path / "fano.blk"
    path.write_text(out)
    code, out2, _ = run(capsys, "verify", "--input", str(path))
    assert code == 0


def test_export_json(capsys):
    code, out, _ = run(capsys, "export", "--builtin", "pg23", "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["n"] == 13 and len(doc["blocks"]) == 13


def test_theory_gm(capsys):
    code, out, _ = run(capsys, "theory", "gm", "--n", "66", "--m", "6")
    assert code == 0
    assert "156" in out
    assert "guaranteed: no" in out


def test_theory_denniston(capsys):
    code, out, _ = run(capsys, "theory", "denniston", "--r", "2", "--s", "3")
    assert code == 0
    assert "2-(28,4,1)" in out
    assert "yes" in out


def test_theory_denniston_bad_args(capsys):
    code, _, err = run(capsys, "theory", "denniston", "--r", "3", "--s", "2")
    assert code == 2


def test_theory_diffset(capsys):
    code, out, _ = run(
        capsys, "theory", "diffset", "--p", "13", "--set", "2,5,6"
    )
    assert code == 0
    assert out.splitlines()[0] == "0: 3"
    assert "1: 1" in out and "12: 1" in out


def test_theory_certificate(capsys):
    code, out, _ = run(
        capsys, "theory", "certificate", "--block", "2_a 6_a 5_a 4_b 12_b 10_b"
    )
    assert code == 0
    assert "pairwise intersecting: yes" in out
    assert out.count("intersection 1") == 12


def test_theory_squares(capsys):
    code, out, _ = run(capsys, "theory", "squares", "--p", "13")
    assert code == 0
    assert out.strip() == "1 3 4 9 10 12"


def test_theory_family(capsys):
    code, out, _ = run(
        capsys, "theory", "family", "--family", "projective", "--args", "3,3"
    )
    assert code == 0
    assert "2-(40,4,1)" in out
