import json

import pytest

from cidiff.editscript import (
    ADDED,
    DELETED,
    MOVED_UNCHANGED,
    UNCHANGED,
    UPDATED,
    added_count,
    added_mod_indices,
    cidiff_script,
    from_dict,
    lcs_diff,
    script_size,
    to_dict,
    to_json,
)
from cidiff.logmodel import log_from_lines
from cidiff.similarity import SimilarityParams

from oracles import script_coverage


class TestBuildScript:
    def test_small_fixture_partition(self, small_pass, small_fail):
        script = cidiff_script(small_pass, small_fail)
        counts = script.kind_counts()
        assert counts[UNCHANGED] == 4
        assert counts[UPDATED] == 1
        assert counts[MOVED_UNCHANGED] == 1
        assert counts[ADDED] == 4
        assert counts[DELETED] == 2
        moved = script.actions_of_kind(MOVED_UNCHANGED)
        assert [(a.ref, a.mod) for a in moved] == [(2, 3)]

    def test_identical_logs(self):
        log = log_from_lines(["x", "y"])
        script = cidiff_script(log, log)
        assert script_size(script) == 0

    def test_empty_reference_all_added(self):
        script = cidiff_script(log_from_lines([]), log_from_lines(["a", "b"]))
        assert [a.kind for a in script.actions] == [ADDED, ADDED]

    def test_updated_actions_carry_token_positions(self, small_pass, small_fail):
        script = cidiff_script(small_pass, small_fail)
        updated = script.actions_of_kind(UPDATED)
        assert updated[0].tokens_changed == (3,)  # success -> failure

    def test_coverage_no_duplicates(self, moves_pass, moves_fail):
        script = cidiff_script(moves_pass, moves_fail)
        refs, mods = script_coverage(script)
        assert refs == list(range(len(moves_pass)))
        assert mods == list(range(len(moves_fail)))

    def test_paired_actions_in_modified_order(self, moves_pass, moves_fail):
        script = cidiff_script(moves_pass, moves_fail)
        mods = [a.mod for a in script.actions if a.mod is not None]
        assert mods == sorted(mods)

    def test_deleted_anchored_after_preceding_pair(self, small_pass, small_fail):
        script = cidiff_script(small_pass, small_fail)
        kinds = [a.kind for a in script.actions]
        # the two deletions (old timing lines) follow the updated compile line
        at = kinds.index(UPDATED)
        assert kinds[at + 1 : at + 3] == [DELETED, DELETED]

    def test_moved_only_from_additional(self, small_pass, small_fail):
        script = cidiff_script(small_pass, small_fail)
        for action in script.actions:
            if action.kind == MOVED_UNCHANGED:
                assert small_pass[action.ref].stripped == small_fail[action.mod].stripped


class TestDominance:
    def test_added_subset_and_size(self, small_pass, small_fail):
        cs = cidiff_script(small_pass, small_fail)
        ls = lcs_diff(small_pass, small_fail)
        assert added_mod_indices(cs) <= added_mod_indices(ls)
        assert script_size(cs) <= script_size(ls)

    def test_sizes_on_fixtures(self, small_pass, small_fail, moves_pass, moves_fail):
        assert script_size(lcs_diff(small_pass, small_fail)) == 10
        assert added_count(lcs_diff(small_pass, small_fail)) == 6
        assert script_size(cidiff_script(moves_pass, moves_fail)) <= script_size(
            lcs_diff(moves_pass, moves_fail)
        )


class TestJsonRoundTrip:
    def test_schema_shape(self, small_pass, small_fail):
        doc = to_dict(cidiff_script(small_pass, small_fail))
        assert set(doc) == {"algorithm", "params", "reference", "modified", "actions"}
        assert doc["algorithm"] == "cidiff"
        assert set(doc["params"]) == {"line_threshold", "token_threshold"}
        assert doc["reference"]["line_count"] == len(small_pass)
        assert doc["modified"]["line_count"] == len(small_fail)
        for action in doc["actions"]:
            assert set(action) <= {"kind", "ref", "mod", "tokens_changed"}
            if action["kind"] in ("updated", "moved-updated"):
                assert "tokens_changed" in action
            else:
                assert "tokens_changed" not in action

    def test_text_not_embedded(self, small_pass, small_fail):
        payload = to_json(cidiff_script(small_pass, small_fail))
        assert "gumtreediff" not in payload

    def test_round_trip(self, small_pass, small_fail):
        script = cidiff_script(small_pass, small_fail)
        again = from_dict(json.loads(to_json(script)))
        assert again.actions == script.actions
        assert again.params == script.params

    def test_rejects_malformed(self):
        with pytest.raises(ValueError):
            from_dict({"algorithm": "cidiff"})
        with pytest.raises(ValueError):
            from_dict(
                {
                    "algorithm": "x",
                    "params": {"line_threshold": 0.5, "token_threshold": 0.6},
                    "reference": {"source": "a", "line_count": 0},
                    "modified": {"source": "b", "line_count": 0},
                    "actions": [{"kind": "exploded", "ref": None, "mod": 0}],
                }
            )


class TestSizeMetrics:
    def test_all_unchanged_is_zero(self):
        log = log_from_lines(["same"])
        assert script_size(cidiff_script(log, log)) == 0
        assert added_count(cidiff_script(log, log)) == 0

    def test_each_paired_action_counts_once(self, small_pass, small_fail):
        script = cidiff_script(small_pass, small_fail)
        counts = script.kind_counts()
        expected = (
            counts[UPDATED]
            + counts[ADDED]
            + counts[DELETED]
            + counts[MOVED_UNCHANGED]
            + counts["moved-updated"]
        )
        assert script_size(script) == expected

    def test_lcs_params_recorded(self, small_pass, small_fail):
        params = SimilarityParams(0.3, 0.9)
        script = lcs_diff(small_pass, small_fail, params)
        assert script.params == params
        assert script.algorithm == "lcs"
