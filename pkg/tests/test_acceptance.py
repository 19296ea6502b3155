"""Acceptance gate: ten exhaustive checks, one PASS/FAIL line each.

Run ``python tests/test_acceptance.py`` for the report alone; under pytest the
lines are printed in the terminal summary.
"""

import pytest

from arthur_packets.checks import (
    Bounds,
    Census,
    complementary_suite,
    domination_suite,
    elementary_suite,
    gap_one_suite,
    independence_suite,
    multiplicity_suite,
    signs_suite,
    strip_suite,
    unrolled_suite,
    vanishing_suite,
)
from arthur_packets.general import pi_general, so9_example
from arthur_packets.groth import render
from arthur_packets.params import HalfInt

WIDE_PAIRS = Bounds(blocks=3, gap=2, bottom=HalfInt(3))


def odd_orthogonal_and_domination() -> Census:
    c = domination_suite(Bounds(blocks=3, gap=1, bottom=HalfInt(2)), max_extra=2)
    p, e = so9_example()
    c.notes["rank-four value"] = render(pi_general(p, e))
    return c


CRITERIA = [
    ("1 elementary baseline", lambda: elementary_suite(max_blocks=4, max_bottom="7/2")),
    ("2 gap-one constituent count", lambda: gap_one_suite(max_bottom=3, spectators=2)),
    ("3 complementary count", lambda: complementary_suite(max_gap=4, max_bottom="7/2")),
    ("4 independence of the wide block", lambda: independence_suite(WIDE_PAIRS)),
    ("5 Jacquet vanishing", lambda: vanishing_suite(WIDE_PAIRS)),
    ("6 strip identities", lambda: strip_suite(max_blocks=3, max_gap=3, max_bottom=3)),
    ("7 multiplicity one", lambda: multiplicity_suite(Bounds(blocks=3, gap=2, bottom=HalfInt(3)))),
    ("8 sign identities", lambda: signs_suite(limit=20)),
    ("9 general parameters", odd_orthogonal_and_domination),
    ("10 unrolled explicit form", lambda: unrolled_suite(max_blocks=3, max_gap=4, max_bottom=3)),
]

REPORT: list[str] = []


def report_line(label: str, c: Census) -> str:
    status = "PASS" if c.ok and c.checked else "FAIL"
    return f"{status} criterion {label}: {c.summary()}"


@pytest.mark.parametrize("label,run", CRITERIA, ids=[label for label, _ in CRITERIA])
def test_criterion(label, run):
    c = run()
    line = report_line(label, c)
    REPORT.append(line)
    print(line)
    assert c.ok, "\n".join(c.failures)
    assert c.checked > 0


def test_vanishing_is_mostly_supported():
    c = vanishing_suite(WIDE_PAIRS)
    assert c.checked > 2 * c.unsupported


def test_domination_steps_are_all_supported():
    c = domination_suite(Bounds(blocks=2, gap=2, bottom=HalfInt(2)), max_extra=2)
    assert c.ok and c.unsupported == 0


if __name__ == "__main__":
    import sys

    lines = [report_line(label, run()) for label, run in CRITERIA]
    print("\n".join(lines))
    sys.exit(0 if all(l.startswith("PASS") for l in lines) else 1)
