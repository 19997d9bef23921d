"""Log line similarity: trigram token similarity and the logsim line metric.

A line scores against another line only when both have the same token count
and share at least one identical token at the same position (the anchor).
The score is then the mean of per-position token similarities, each in
{0, 0.5, 1}.
"""

from __future__ import annotations

from dataclasses import dataclass

from .logmodel import LogLine

DEFAULT_LINE_THRESHOLD = 0.5
DEFAULT_TOKEN_THRESHOLD = 0.6


@dataclass(frozen=True)
class SimilarityParams:
    line_threshold: float = DEFAULT_LINE_THRESHOLD
    token_threshold: float = DEFAULT_TOKEN_THRESHOLD

    def __post_init__(self) -> None:
        for name in ("line_threshold", "token_threshold"):
            value = getattr(self, name)
            if not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must be in [0, 1], got {value}")


def _trigrams(token: str) -> set[str]:
    # Tokens shorter than 3 characters contribute themselves as a single
    # pseudo-trigram so short dynamic tokens remain comparable.
    if len(token) < 3:
        return {token}
    return {token[i : i + 3] for i in range(len(token) - 2)}


def trigram_similarity(a: str, b: str) -> float:
    """Jaccard similarity of the distinct length-3 substring sets of two tokens."""
    if a == b:
        return 1.0
    ta = _trigrams(a)
    tb = _trigrams(b)
    union = len(ta | tb)
    if union == 0:
        return 0.0
    return len(ta & tb) / union


def token_similarity(u: str, v: str, params: SimilarityParams) -> float:
    """Similarity of two tokens at the same line position: 1, 0.5 or 0."""
    if u == v:
        return 1.0
    if len(u) == len(v):
        return 0.5
    if trigram_similarity(u, v) >= params.token_threshold:
        return 0.5
    return 0.0


def logsim(s: LogLine, t: LogLine, params: SimilarityParams) -> float:
    """Line similarity in [0, 1].

    Returns 0 when the token counts differ or when no position holds a pair
    of identical tokens.
    """
    u = s.tokens
    v = t.tokens
    n = len(u)
    if n != len(v) or n == 0:
        return 0.0
    has_anchor = False
    total = 0.0
    token_threshold = params.token_threshold
    for ui, vi in zip(u, v):
        if ui == vi:
            total += 1.0
            has_anchor = True
        elif len(ui) == len(vi):
            total += 0.5
        elif trigram_similarity(ui, vi) >= token_threshold:
            total += 0.5
    if not has_anchor:
        return 0.0
    return total / n


def token_change_positions(reference: LogLine, modified: LogLine) -> tuple[int, ...]:
    """0-based positions of the modified line's tokens that differ from the
    reference line's token at the same position (or have no counterpart)."""
    ref_tokens = reference.tokens
    changed = [
        i
        for i, tok in enumerate(modified.tokens)
        if i >= len(ref_tokens) or ref_tokens[i] != tok
    ]
    return tuple(changed)
