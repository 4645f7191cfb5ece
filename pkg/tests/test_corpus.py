"""
Tests for the shipped corpus.
"""

import pytest

from hardybench.data.corpus import CORPUS, get_case, get_corpus
from hardybench.utils.exceptions import ValidationError

ALL_CASES = [case for cases in CORPUS.values() for case in cases]


class TestCorpusContents:
    """Test corpus structure."""

    @pytest.mark.parametrize("inequality", sorted(CORPUS))
    def test_at_least_twenty_cases(self, inequality):
        """Test every inequality ships at least 20 cases."""
        assert len(get_corpus(inequality)) >= 20

    def test_unique_ids(self):
        """Test case ids are unique."""
        ids = [case.case_id for case in ALL_CASES]
        assert len(ids) == len(set(ids))

    def test_cases_build(self):
        """Test every case parses into a group, norm and profile."""
        for case in ALL_CASES:
            group, norm, profile = case.build()
            assert group.Q > 0
            assert profile.family.value == case.profile.split(":")[0]

    def test_lookup(self):
        """Test get_case and to_dict."""
        case = get_corpus("rellich")[0]
        assert get_case(case.case_id) is case
        assert case.to_dict()["params"] == {"k": 2, "p": 2.0}

    def test_unknown(self):
        """Test unknown ids and inequalities."""
        with pytest.raises(ValidationError, match="Unknown corpus case"):
            get_case("lp-hardy/none")
        with pytest.raises(ValidationError, match="Unknown inequality"):
            get_corpus("sobolev")
        with pytest.raises(ValidationError, match="No corpus"):
            get_corpus("elementary")


@pytest.mark.slow
@pytest.mark.parametrize("case", ALL_CASES, ids=lambda case: case.case_id)
def test_corpus_case_passes(case):
    """Test every shipped case satisfies its inequality and asserted floor."""
    report = case.evaluate()
    assert report.passed, report.summary()
