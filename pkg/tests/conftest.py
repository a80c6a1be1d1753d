import re

import pytest

from blockgraph import builtin_design, census_report
from blockgraph.report import builtin_generators

# ---------------------------------------------------------------------------
# acceptance summary: one pass/fail line per criterion at the end of the run

_acceptance_outcomes = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    match = re.match(r"test_criterion_(\d+)_(\w+)", item.name)
    if match and report.when == "call":
        number = int(match.group(1))
        label = match.group(2).replace("_", " ")
        _acceptance_outcomes[number] = (label, report.passed)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance_outcomes):
        label, passed = _acceptance_outcomes[number]
        terminalreporter.write_line(
            f"{'PASS' if passed else 'FAIL'}  criterion {number:2d}: {label}"
        )


def members_from_tokens(design, token_blocks):
    """Clique members (block indices) from whitespace-separated token blocks."""
    out = []
    for blk in token_blocks:
        idx = tuple(sorted(design.label_index[tok] for tok in blk.split()))
        out.append(design.block_index[idx])
    return tuple(sorted(out))


# The 13 blocks of the non-canonical clique analysed in detail for main66
# (one translate of each of nine base blocks plus four translates of the
# block through infinity).
PLANE_CLIQUE_BLOCKS = (
    "0_0 3_0 2_1 7_1 11_a 4_a",
    "2_0 3_0 7_0 0_2 6_b 9_b",
    "7_1 3_1 0_2 2_2 1_a 6_a",
    "0_1 3_1 2_1 7_0 12_b 8_b",
    "2_2 3_2 7_0 0_0 10_a 12_a",
    "7_2 3_2 0_2 2_1 4_b 5_b",
    "0_0 2_0 3_1 7_2 9_a 10_b",
    "7_1 0_1 3_2 2_0 8_a 11_b",
    "2_2 7_2 3_0 0_1 5_a 1_b",
    "inf 0_0 0_1 0_2 0_a 0_b",
    "inf 2_0 2_1 2_2 2_a 2_b",
    "inf 3_0 3_1 3_2 3_a 3_b",
    "inf 7_0 7_1 7_2 7_a 7_b",
)

TWO_FIBRE_BLOCK = "2_a 6_a 5_a 4_b 12_b 10_b"


def orbit_clique_members(design):
    """The 13 translates of the two-fibre base block, as block indices."""
    blocks = []
    for e in range(13):
        toks = []
        for tok in TWO_FIBRE_BLOCK.split():
            v, t = tok.split("_")
            toks.append(f"{(int(v) + e) % 13}_{t}")
        blocks.append(" ".join(toks))
    return members_from_tokens(design, blocks)


@pytest.fixture(scope="session")
def main66():
    return builtin_design("main66")


@pytest.fixture(scope="session")
def main66_census(main66):
    return census_report(main66)


@pytest.fixture(scope="session")
def main66_generators(main66):
    return builtin_generators(main66, "main66")


@pytest.fixture(scope="session")
def appendix_a():
    return builtin_design("appendixA66")


@pytest.fixture(scope="session")
def appendix_b():
    return builtin_design("appendixB66")


@pytest.fixture(scope="session")
def appendix_a_census(appendix_a):
    return census_report(appendix_a)


@pytest.fixture(scope="session")
def appendix_b_census(appendix_b):
    return census_report(appendix_b)
