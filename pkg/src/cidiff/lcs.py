"""Longest common subsequence over log lines (Myers) and the classic diff.

The matcher and the LCS baseline both anchor on this. Lines are compared on
their timestamp-stripped text. The search runs in linear space via the
divide-and-conquer middle-snake formulation, after two exact reductions:
interning lines to integer ids and dropping lines whose content never occurs
on the other side (such lines cannot participate in any common subsequence).
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Sequence

from .logmodel import Log


class DiffTimeout(Exception):
    """Raised when a diff exceeds its cooperative deadline."""


@dataclass(frozen=True)
class LcsPairing:
    """Matched (ref_index, mod_index) pairs, strictly increasing in both."""

    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(self.pairs)


def lcs_lines(reference: Log, modified: Log, deadline: float | None = None) -> LcsPairing:
    """Maximum-length pairing of identical lines, order-preserving on both sides."""
    pairs = lcs_indices(reference.stripped_lines(), modified.stripped_lines(), deadline)
    return LcsPairing(pairs=tuple(pairs))


def lcs_indices(
    a: Sequence[str], b: Sequence[str], deadline: float | None = None
) -> list[tuple[int, int]]:
    ids: dict[str, int] = {}
    xa = [ids.setdefault(s, len(ids)) for s in a]
    xb = [ids.setdefault(s, len(ids)) for s in b]
    common = set(xa) & set(xb)
    # Positions of lines that can possibly match; the LCS of the reduced
    # sequences equals the LCS of the full ones.
    pos_a = [i for i, x in enumerate(xa) if x in common]
    pos_b = [j for j, x in enumerate(xb) if x in common]
    ra = [xa[i] for i in pos_a]
    rb = [xb[j] for j in pos_b]
    reduced = _myers_pairs(ra, rb, deadline)
    return [(pos_a[p], pos_b[q]) for p, q in reduced]


def _myers_pairs(a: list[int], b: list[int], deadline: float | None) -> list[tuple[int, int]]:
    out: list[tuple[int, int]] = []
    boxes = [(0, len(a), 0, len(b))]
    while boxes:
        if deadline is not None and time.monotonic() > deadline:
            raise DiffTimeout("line diff exceeded its time budget")
        alo, ahi, blo, bhi = boxes.pop()
        while alo < ahi and blo < bhi and a[alo] == b[blo]:
            out.append((alo, blo))
            alo += 1
            blo += 1
        while alo < ahi and blo < bhi and a[ahi - 1] == b[bhi - 1]:
            ahi -= 1
            bhi -= 1
            out.append((ahi, bhi))
        if alo == ahi or blo == bhi:
            continue
        x0, y0, x1, y1 = _middle_snake(a, alo, ahi, b, blo, bhi, deadline)
        out.extend((x0 + t, y0 + t) for t in range(x1 - x0))
        boxes.append((alo, x0, blo, y0))
        boxes.append((x1, ahi, y1, bhi))
    out.sort()
    return out


def _middle_snake(
    a: list[int], alo: int, ahi: int, b: list[int], blo: int, bhi: int, deadline: float | None
) -> tuple[int, int, int, int]:
    """Find a middle snake of the box. The caller guarantees no common prefix
    or suffix and both sides non-empty, so the edit distance here is >= 2 and
    the split always makes progress."""
    n = ahi - alo
    m = bhi - blo
    delta = n - m
    odd = (delta & 1) == 1
    # Diagonal index space is [-m, n]; sentinels sit one past each edge.
    off = m + 1
    vf = [-1] * (n + m + 3)
    vb = [n + 1] * (n + m + 3)
    vf[off] = 0
    vb[off + delta] = n
    fmin = fmax = 0
    bmin = bmax = delta
    for d in range(1, ((n + m + 2) // 2) + 1):
        if deadline is not None and (d & 31) == 0 and time.monotonic() > deadline:
            raise DiffTimeout("line diff exceeded its time budget")
        # forward round
        if fmin > -m:
            fmin -= 1
            vf[off + fmin - 1] = -1
        else:
            fmin += 1
        if fmax < n:
            fmax += 1
            vf[off + fmax + 1] = -1
        else:
            fmax -= 1
        k = fmax
        while k >= fmin:
            if vf[off + k - 1] >= vf[off + k + 1]:
                x = vf[off + k - 1] + 1
            else:
                x = vf[off + k + 1]
            y = x - k
            sx, sy = x, y
            while x < n and y < m and a[alo + x] == b[blo + y]:
                x += 1
                y += 1
            vf[off + k] = x
            if odd and bmin <= k <= bmax and vb[off + k] <= x:
                return alo + sx, blo + sy, alo + x, blo + y
            k -= 2
        # backward round
        if bmin > -m:
            bmin -= 1
            vb[off + bmin - 1] = n + 1
        else:
            bmin += 1
        if bmax < n:
            bmax += 1
            vb[off + bmax + 1] = n + 1
        else:
            bmax -= 1
        k = bmax
        while k >= bmin:
            if vb[off + k - 1] < vb[off + k + 1]:
                x = vb[off + k - 1]
            else:
                x = vb[off + k + 1] - 1
            y = x - k
            sx, sy = x, y
            while x > 0 and y > 0 and a[alo + x - 1] == b[blo + y - 1]:
                x -= 1
                y -= 1
            vb[off + k] = x
            if not odd and fmin <= k <= fmax and x <= vf[off + k]:
                return alo + x, blo + y, alo + sx, blo + sy
            k -= 2
    raise AssertionError("middle snake search failed to converge")
