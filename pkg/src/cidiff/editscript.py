"""Edit scripts: the six-action representation of a log pair diff.

Every line of both logs appears in exactly one action. Paired and added
actions are emitted in modified-log order; deleted actions are interleaved
after the non-moved pair that precedes them in the reference log.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .lcs import lcs_lines
from .logmodel import Log
from .matching import ADDITIONAL, SeedSet, initial_seeds, match
from .similarity import SimilarityParams, token_change_positions

UNCHANGED = "unchanged"
UPDATED = "updated"
ADDED = "added"
DELETED = "deleted"
MOVED_UNCHANGED = "moved-unchanged"
MOVED_UPDATED = "moved-updated"

ACTION_KINDS = (UNCHANGED, UPDATED, ADDED, DELETED, MOVED_UNCHANGED, MOVED_UPDATED)


@dataclass(frozen=True)
class Action:
    kind: str
    ref: int | None
    mod: int | None
    tokens_changed: tuple[int, ...] | None = None


@dataclass(frozen=True)
class EditScript:
    actions: tuple[Action, ...]
    params: SimilarityParams
    algorithm: str
    reference_source: str
    reference_line_count: int
    modified_source: str
    modified_line_count: int

    def actions_of_kind(self, kind: str) -> list[Action]:
        return [a for a in self.actions if a.kind == kind]

    def kind_counts(self) -> dict[str, int]:
        counts = {kind: 0 for kind in ACTION_KINDS}
        for action in self.actions:
            counts[action.kind] += 1
        return counts


def build_script(
    reference: Log,
    modified: Log,
    initial: SeedSet,
    additional: SeedSet,
    params: SimilarityParams,
    algorithm: str = "cidiff",
) -> EditScript:
    """Convert seed sets into the full edit script."""
    by_mod: dict[int, Action] = {}
    paired_ref: set[int] = set()
    for seed in initial + additional:
        moved = seed.kind == ADDITIONAL
        for i in range(seed.size):
            ref_idx = seed.r + i
            mod_idx = seed.m + i
            paired_ref.add(ref_idx)
            if seed.identical[i]:
                kind = MOVED_UNCHANGED if moved else UNCHANGED
                changed = None
            else:
                kind = MOVED_UPDATED if moved else UPDATED
                changed = token_change_positions(reference[ref_idx], modified[mod_idx])
            by_mod[mod_idx] = Action(kind, ref_idx, mod_idx, changed)

    # Anchor each deleted reference line after the closest preceding
    # non-moved pair; deletions before any such pair come first.
    anchor_pairs = sorted(
        (seed.r + i, seed.m + i) for seed in initial for i in range(seed.size)
    )
    anchored: dict[int, list[Action]] = {}
    leading: list[Action] = []
    pair_pos = 0
    current_mod_anchor = -1
    for ref_idx in range(len(reference)):
        if ref_idx in paired_ref:
            while pair_pos < len(anchor_pairs) and anchor_pairs[pair_pos][0] <= ref_idx:
                current_mod_anchor = anchor_pairs[pair_pos][1]
                pair_pos += 1
            continue
        action = Action(DELETED, ref_idx, None)
        if current_mod_anchor < 0:
            leading.append(action)
        else:
            anchored.setdefault(current_mod_anchor, []).append(action)

    actions: list[Action] = list(leading)
    for mod_idx in range(len(modified)):
        actions.append(by_mod.get(mod_idx) or Action(ADDED, None, mod_idx))
        actions.extend(anchored.get(mod_idx, ()))
    script = EditScript(
        actions=tuple(actions),
        params=params,
        algorithm=algorithm,
        reference_source=reference.source,
        reference_line_count=len(reference),
        modified_source=modified.source,
        modified_line_count=len(modified),
    )
    _check_coverage(script)
    return script


def _check_coverage(script: EditScript) -> None:
    refs = [a.ref for a in script.actions if a.ref is not None]
    mods = [a.mod for a in script.actions if a.mod is not None]
    if sorted(refs) != list(range(script.reference_line_count)) or sorted(mods) != list(
        range(script.modified_line_count)
    ):
        raise AssertionError("edit script does not cover every line exactly once")


def cidiff_script(
    reference: Log,
    modified: Log,
    params: SimilarityParams | None = None,
    deadline: float | None = None,
) -> EditScript:
    """The full matcher pipeline rendered as an edit script."""
    if params is None:
        params = SimilarityParams()
    initial, additional = match(reference, modified, params, deadline)
    return build_script(reference, modified, initial, additional, params, algorithm="cidiff")


def lcs_diff(
    reference: Log,
    modified: Log,
    params: SimilarityParams | None = None,
    deadline: float | None = None,
) -> EditScript:
    """Classic diff: unchanged lines from the LCS, everything else added or
    deleted."""
    if params is None:
        params = SimilarityParams()
    pairing = lcs_lines(reference, modified, deadline)
    seeds = initial_seeds(reference, modified, pairing)
    return build_script(reference, modified, seeds, [], params, algorithm="lcs")


def script_size(script: EditScript) -> int:
    """Number of actions other than unchanged; paired actions count once."""
    return sum(1 for a in script.actions if a.kind != UNCHANGED)


def added_count(script: EditScript) -> int:
    return sum(1 for a in script.actions if a.kind == ADDED)


def added_mod_indices(script: EditScript) -> set[int]:
    return {a.mod for a in script.actions if a.kind == ADDED}


def to_dict(script: EditScript) -> dict:
    """Canonical JSON-ready form consumed by the viewer and the harness."""
    actions = []
    for a in script.actions:
        entry: dict = {"kind": a.kind, "ref": a.ref, "mod": a.mod}
        if a.kind in (UPDATED, MOVED_UPDATED):
            entry["tokens_changed"] = list(a.tokens_changed or ())
        actions.append(entry)
    return {
        "algorithm": script.algorithm,
        "params": {
            "line_threshold": script.params.line_threshold,
            "token_threshold": script.params.token_threshold,
        },
        "reference": {
            "source": script.reference_source,
            "line_count": script.reference_line_count,
        },
        "modified": {
            "source": script.modified_source,
            "line_count": script.modified_line_count,
        },
        "actions": actions,
    }


def to_json(script: EditScript, indent: int | None = None) -> str:
    return json.dumps(to_dict(script), indent=indent)


def from_dict(data: dict) -> EditScript:
    """Parse the canonical form back into an EditScript, validating shape."""
    try:
        params = SimilarityParams(
            line_threshold=data["params"]["line_threshold"],
            token_threshold=data["params"]["token_threshold"],
        )
        actions = []
        for entry in data["actions"]:
            kind = entry["kind"]
            if kind not in ACTION_KINDS:
                raise ValueError(f"unknown action kind {kind!r}")
            changed = entry.get("tokens_changed")
            actions.append(
                Action(
                    kind,
                    entry["ref"],
                    entry["mod"],
                    tuple(changed) if changed is not None else None,
                )
            )
        return EditScript(
            actions=tuple(actions),
            params=params,
            algorithm=data["algorithm"],
            reference_source=data["reference"]["source"],
            reference_line_count=data["reference"]["line_count"],
            modified_source=data["modified"]["source"],
            modified_line_count=data["modified"]["line_count"],
        )
    except KeyError as exc:
        raise ValueError(f"edit script document is missing field {exc}") from exc
