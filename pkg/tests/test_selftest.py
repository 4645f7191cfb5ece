"""
Tests for the selftest suite.
"""

from types import SimpleNamespace

import pytest

from hardybench import selftest
from hardybench.data.constants import ELEMENTARY_SAMPLES
from hardybench.data.corpus import CORPUS
from hardybench.selftest import CheckOutcome, SelftestResult, run_selftest
from hardybench.utils.exceptions import QuadratureError


def test_result_counts_and_json():
    """Test counts, the ok flag and that timings stay out of to_dict."""
    result = SelftestResult([CheckOutcome("a", True, "fine", 0.5),
                             CheckOutcome("b", False, "off", 0.25)])
    assert (result.passed, result.failed, result.ok) == (1, 1, False)
    data = result.to_dict()
    assert data["checks"][0] == {"name": "a", "passed": True, "detail": "fine"}
    assert "FAIL  b" in result.summary()


def test_raising_check_fails(monkeypatch):
    """Test a check that raises is recorded as failed."""
    def boom(quad):
        raise QuadratureError("no convergence")

    monkeypatch.setattr(selftest, "CHECKS", [("boom", boom), ("fine", lambda quad: (True, "ok"))])
    result = run_selftest()
    assert [o.passed for o in result.outcomes] == [False, True]
    assert result.outcomes[0].detail == "QuadratureError: no convergence"


def test_suite_covers_every_invariant():
    """Test the suite runs every corpus and the sampled and oracle checks."""
    names = {name for name, _ in selftest.CHECKS}
    assert {f"corpus-{inequality}" for inequality in CORPUS} <= names
    assert {"rellich-constant", "clqq-integral", "polar-vs-ambient", "expansion-identity",
            "elementary-samples", "elementary-constant-doubling"} <= names
    assert ELEMENTARY_SAMPLES == 10 ** 6


def test_corpus_check_lists_failures(monkeypatch):
    """Test a corpus check fails when one case fails and names it."""
    def case(case_id, passed):
        return SimpleNamespace(case_id=case_id,
                               evaluate=lambda quad: SimpleNamespace(passed=passed))

    cases = [case("rellich/a", True), case("rellich/b", False)]
    monkeypatch.setattr(selftest, "get_corpus", lambda inequality: cases)
    passed, detail = selftest._corpus_check("rellich")(None)
    assert not passed
    assert detail == "1/2 cases pass (failed: rellich/b)"


def test_rellich_constant_grid(quad):
    """Test the exact K grid check."""
    passed, detail = selftest._rellich_constant(quad)
    assert passed
    assert detail.startswith("27/27 exact")


def test_cp_grid_doubling(quad):
    """Test C(3) and C(4) are stable under grid doubling."""
    passed, detail = selftest._cp_grid_doubling(quad)
    assert passed, detail


@pytest.mark.slow
def test_full_selftest_passes():
    """Test every shipped check passes."""
    result = run_selftest()
    assert result.ok, result.summary()
    assert len(result.outcomes) == len(selftest.CHECKS)
