"""Comparison approaches: keyword search and bigram differencing.

Both return the same flagged-line shape as the edit-script based algorithms
expose through their added lines, so the harness can score them uniformly.
"""

from __future__ import annotations

from dataclasses import dataclass

from .editscript import EditScript, added_mod_indices
from .logmodel import Log

DEFAULT_KEYWORDS = ("fail", "error", "exception", "panic")

_START = object()
_END = object()


@dataclass(frozen=True)
class FlaggedLines:
    """0-based failing-log line indices flagged as relevant output."""

    mod_indices: frozenset[int]

    def __len__(self) -> int:
        return len(self.mod_indices)

    def __iter__(self):
        return iter(self.mod_indices)


def keyword_search(failing: Log, keywords=DEFAULT_KEYWORDS) -> FlaggedLines:
    """Flag lines containing any keyword as a case-insensitive substring."""
    if not keywords:
        raise ValueError("keyword list must not be empty")
    lowered = [k.lower() for k in keywords]
    flagged = {
        line.index
        for line in failing
        if any(k in line.stripped.lower() for k in lowered)
    }
    return FlaggedLines(frozenset(flagged))


def bigram_diff(passing: Log, failing: Log) -> FlaggedLines:
    """Flag failing lines whose (previous line, line) pair never occurs in the
    passing log. Sentinels bound both logs so boundary changes register."""
    known: set[tuple] = set()
    prev: object = _START
    for line in passing:
        known.add((prev, line.stripped))
        prev = line.stripped
    if len(passing) > 0:
        known.add((prev, _END))
    flagged = set()
    prev = _START
    for line in failing:
        if (prev, line.stripped) not in known:
            flagged.add(line.index)
        prev = line.stripped
    return FlaggedLines(frozenset(flagged))


def diff_output_lines(script: EditScript) -> FlaggedLines:
    """The added lines of an edit script, as the baseline-comparable output."""
    return FlaggedLines(frozenset(added_mod_indices(script)))
