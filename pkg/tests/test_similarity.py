import pytest
from hypothesis import given
from hypothesis import strategies as st

from cidiff.logmodel import log_from_lines
from cidiff.similarity import (
    SimilarityParams,
    logsim,
    token_change_positions,
    token_similarity,
    trigram_similarity,
)

PARAMS = SimilarityParams()


def line(text: str):
    return log_from_lines([text])[0]


class TestParams:
    def test_defaults(self):
        assert PARAMS.line_threshold == 0.5
        assert PARAMS.token_threshold == 0.6

    @pytest.mark.parametrize("bad", [-0.1, 1.1, 2.0])
    def test_out_of_range_rejected(self, bad):
        with pytest.raises(ValueError):
            SimilarityParams(line_threshold=bad)
        with pytest.raises(ValueError):
            SimilarityParams(token_threshold=bad)


class TestTrigramSimilarity:
    def test_one_common_of_three(self):
        # {abc, bcd} vs {abc, bce}: one common, union of three
        assert trigram_similarity("abcd", "abce") == pytest.approx(1 / 3)

    def test_short_tokens_are_pseudo_trigrams(self):
        assert trigram_similarity("xy", "xz") == 0.0

    def test_version_bump(self):
        # {1.2} vs {1.2, .2., 2.1}
        assert trigram_similarity("1.2", "1.2.1") == pytest.approx(1 / 3)

    def test_identical(self):
        assert trigram_similarity("same", "same") == 1.0

    @given(st.text(min_size=1, max_size=12), st.text(min_size=1, max_size=12))
    def test_range_and_symmetry(self, a, b):
        value = trigram_similarity(a, b)
        assert 0.0 <= value <= 1.0
        assert value == trigram_similarity(b, a)


class TestTokenSimilarity:
    def test_identical(self):
        assert token_similarity("Build", "Build", PARAMS) == 1.0

    def test_equal_length_is_half(self):
        assert token_similarity("2023-11-22", "2023-11-23", PARAMS) == 0.5

    def test_different_everything_is_zero(self):
        assert token_similarity("error,", "success,", PARAMS) == 0.0

    def test_trigram_rescue_for_unequal_lengths(self):
        # substring extension shares most trigrams
        params = SimilarityParams(token_threshold=0.5)
        assert token_similarity("abcdef", "abcdefgh", params) == 0.5

    @given(st.text(max_size=10), st.text(max_size=10))
    def test_value_set(self, u, v):
        assert token_similarity(u, v, PARAMS) in (0.0, 0.5, 1.0)


class TestLogsim:
    def test_worked_example(self):
        s = line("2023-11-22 Build error, took 2.6 seconds")
        t = line("2023-11-23 Build success, took 3.4 seconds")
        assert logsim(s, t, PARAMS) == pytest.approx(4 / 6)
        per_token = [token_similarity(u, v, PARAMS) for u, v in zip(s.tokens, t.tokens)]
        assert per_token == [0.5, 1.0, 0.0, 1.0, 0.5, 1.0]

    def test_self_similarity(self):
        s = line("anything at all")
        assert logsim(s, s, PARAMS) == 1.0

    def test_token_count_mismatch(self):
        assert logsim(line("a b c"), line("a b"), PARAMS) == 0.0

    def test_anchor_rule_forces_zero(self):
        # every position similar but never identical
        assert logsim(line("x1 y1"), line("x2 y2"), PARAMS) == 0.0

    def test_blank_lines_score_zero(self):
        assert logsim(line(""), line(""), PARAMS) == 0.0
        assert logsim(line(""), line("text"), PARAMS) == 0.0

    @given(
        st.lists(st.text(alphabet="ab1", min_size=1, max_size=4), max_size=6),
        st.lists(st.text(alphabet="ab1", min_size=1, max_size=4), max_size=6),
    )
    def test_symmetry_range_and_anchor(self, ta, tb):
        s = line(" ".join(ta))
        t = line(" ".join(tb))
        value = logsim(s, t, PARAMS)
        assert 0.0 <= value <= 1.0
        assert value == logsim(t, s, PARAMS)
        if value > 0:
            assert len(s.tokens) == len(t.tokens)
            assert any(u == v for u, v in zip(s.tokens, t.tokens))


class TestTokenChangePositions:
    def test_changed_positions(self):
        s = line("Compiling package core: success")
        t = line("Compiling package core: failure")
        assert token_change_positions(s, t) == (3,)

    def test_identical_lines_have_none(self):
        s = line("same line here")
        assert token_change_positions(s, s) == ()

    def test_extra_modified_tokens_count_as_changed(self):
        assert token_change_positions(line("a b"), line("a b c")) == (2,)
