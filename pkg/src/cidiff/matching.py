"""Seed-and-extend line matcher.

Four steps: initial seeds from the LCS, bidirectional extension under the
line similarity threshold, greedy overlap removal with adjacency merging, and
additional seeds for moved lines. The result is a one-to-one mapping between
reference and modified line indices.
"""

from __future__ import annotations

from dataclasses import dataclass

from .lcs import LcsPairing, lcs_lines
from .logmodel import Log
from .similarity import SimilarityParams, logsim

INITIAL = "initial"
ADDITIONAL = "additional"


@dataclass
class Seed:
    """A block of consecutive matched line pairs.

    Covers reference lines [r, r+size) and modified lines [m, m+size).
    ``identical[i]`` records stripped-text equality of the i-th pair;
    ``protected[i]`` marks pairs that overlap removal must never delete
    (LCS pairs for initial seeds, the anchor pair for additional seeds).
    """

    r: int
    m: int
    kind: str
    identical: list[bool]
    protected: list[bool]

    @property
    def size(self) -> int:
        return len(self.identical)

    def pairs(self) -> list[tuple[int, int]]:
        return [(self.r + i, self.m + i) for i in range(self.size)]

    def covers_ref(self, x: int) -> bool:
        return self.r <= x < self.r + self.size

    def covers_mod(self, y: int) -> bool:
        return self.m <= y < self.m + self.size

    def copy(self) -> "Seed":
        return Seed(self.r, self.m, self.kind, list(self.identical), list(self.protected))


SeedSet = list[Seed]


def initial_seeds(reference: Log, modified: Log, lcs: LcsPairing) -> SeedSet:
    """Merge LCS pairs that are adjacent in both logs into initial seeds."""
    seeds: SeedSet = []
    for ref_idx, mod_idx in lcs:
        last = seeds[-1] if seeds else None
        if last is not None and ref_idx == last.r + last.size and mod_idx == last.m + last.size:
            last.identical.append(True)
            last.protected.append(True)
        else:
            seeds.append(Seed(ref_idx, mod_idx, INITIAL, [True], [True]))
    return seeds


def extend_seeds(
    seeds: SeedSet,
    reference: Log,
    modified: Log,
    params: SimilarityParams,
    extra_blocked_ref: set[int] | None = None,
    extra_blocked_mod: set[int] | None = None,
) -> SeedSet:
    """Grow every seed one adjacent pair at a time in both directions.

    A candidate pair is absorbed when its similarity reaches the line
    threshold and neither of its lines is blocked. Blocked lines are the
    protected (pre-extension) lines of the input seeds plus whatever extra
    sets the caller provides. Extension on a side stops at the first rejected
    pair. Extended seeds may overlap each other, but only on pairs added
    here.
    """
    blocked_ref = set(extra_blocked_ref) if extra_blocked_ref else set()
    blocked_mod = set(extra_blocked_mod) if extra_blocked_mod else set()
    for seed in seeds:
        for i in range(seed.size):
            if seed.protected[i]:
                blocked_ref.add(seed.r + i)
                blocked_mod.add(seed.m + i)
    threshold = params.line_threshold
    ref_lines = reference.lines
    mod_lines = modified.lines
    out: SeedSet = []
    for seed in seeds:
        up: list[bool] = []  # pairs above the seed, outermost last
        x, y = seed.r - 1, seed.m - 1
        while (
            x >= 0
            and y >= 0
            and x not in blocked_ref
            and y not in blocked_mod
            and logsim(ref_lines[x], mod_lines[y], params) >= threshold
        ):
            up.append(ref_lines[x].stripped == mod_lines[y].stripped)
            x -= 1
            y -= 1
        down: list[bool] = []
        x, y = seed.r + seed.size, seed.m + seed.size
        while (
            x < len(ref_lines)
            and y < len(mod_lines)
            and x not in blocked_ref
            and y not in blocked_mod
            and logsim(ref_lines[x], mod_lines[y], params) >= threshold
        ):
            down.append(ref_lines[x].stripped == mod_lines[y].stripped)
            x += 1
            y += 1
        grown = Seed(
            seed.r - len(up),
            seed.m - len(up),
            seed.kind,
            up[::-1] + seed.identical + down,
            [False] * len(up) + seed.protected + [False] * len(down),
        )
        out.append(grown)
    return out


def _trim_conflicts(seed: Seed, picked: Seed) -> Seed | None:
    """Drop from ``seed`` every pair sharing a reference or modified line with
    ``picked``. The surviving pairs must stay contiguous; holes cannot occur
    because extension never crosses a protected line."""
    keep = [
        i
        for i in range(seed.size)
        if not (picked.covers_ref(seed.r + i) or picked.covers_mod(seed.m + i))
    ]
    if len(keep) == seed.size:
        return seed
    if not keep:
        if any(seed.protected):
            raise AssertionError("overlap removal deleted a protected pair")
        return None
    if keep != list(range(keep[0], keep[-1] + 1)):
        raise AssertionError("overlap removal split a seed")
    lo, hi = keep[0], keep[-1] + 1
    if any(seed.protected[:lo]) or any(seed.protected[hi:]):
        raise AssertionError("overlap removal deleted a protected pair")
    return Seed(
        seed.r + lo,
        seed.m + lo,
        seed.kind,
        seed.identical[lo:hi],
        seed.protected[lo:hi],
    )


def remove_overlaps(seeds: SeedSet) -> SeedSet:
    """Greedy one-to-one resolution: repeatedly keep the largest seed and trim
    every other seed's conflicting pairs, then merge newly adjacent seeds.

    Ties on size break toward the smaller reference start, then the smaller
    modified start, which makes the result deterministic. Trims only ever
    affect seeds conflicting with the picked one, so the greedy loop runs
    independently inside each connected component of the conflict graph.
    """
    done: SeedSet = []
    for component in _conflict_components(seeds):
        remaining = [seed.copy() for seed in component]
        while remaining:
            best = min(
                range(len(remaining)),
                key=lambda i: (-remaining[i].size, remaining[i].r, remaining[i].m),
            )
            picked = remaining.pop(best)
            done.append(picked)
            trimmed: SeedSet = []
            for other in remaining:
                survivor = _trim_conflicts(other, picked)
                if survivor is not None:
                    trimmed.append(survivor)
            remaining = trimmed
    return _merge_adjacent(done)


def _conflict_components(seeds: SeedSet) -> list[SeedSet]:
    """Group seeds into connected components of interval overlap on either
    the reference axis or the modified axis."""
    n = len(seeds)
    parent = list(range(n))

    def find(i: int) -> int:
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    def union(i: int, j: int) -> None:
        ri, rj = find(i), find(j)
        if ri != rj:
            parent[rj] = ri

    for key_start, key_end in (
        (lambda s: s.r, lambda s: s.r + s.size),
        (lambda s: s.m, lambda s: s.m + s.size),
    ):
        order = sorted(range(n), key=lambda i: key_start(seeds[i]))
        run_root = -1
        run_end = -1
        for i in order:
            start, end = key_start(seeds[i]), key_end(seeds[i])
            if run_root >= 0 and start < run_end:
                union(run_root, i)
                run_end = max(run_end, end)
            else:
                run_root = i
                run_end = end
    groups: dict[int, SeedSet] = {}
    for i in range(n):
        groups.setdefault(find(i), []).append(seeds[i])
    return list(groups.values())


def _merge_adjacent(seeds: SeedSet) -> SeedSet:
    merged: SeedSet = []
    for seed in sorted(seeds, key=lambda s: (s.r, s.m)):
        last = merged[-1] if merged else None
        if last is not None and last.r + last.size == seed.r and last.m + last.size == seed.m:
            last.identical.extend(seed.identical)
            last.protected.extend(seed.protected)
        else:
            merged.append(seed)
    return merged


def additional_seeds(
    reference: Log,
    modified: Log,
    taken: SeedSet,
    params: SimilarityParams,
) -> SeedSet:
    """Pair leftover identical lines with equal occurrence counts, in order of
    appearance, then extend and deduplicate them the same way as step two and
    three. Only these seeds can represent moved lines."""
    taken_ref = {x for seed in taken for x in range(seed.r, seed.r + seed.size)}
    taken_mod = {y for seed in taken for y in range(seed.m, seed.m + seed.size)}
    ref_occurrences: dict[str, list[int]] = {}
    for i, line in enumerate(reference.lines):
        if i not in taken_ref:
            ref_occurrences.setdefault(line.stripped, []).append(i)
    mod_occurrences: dict[str, list[int]] = {}
    for j, line in enumerate(modified.lines):
        if j not in taken_mod:
            mod_occurrences.setdefault(line.stripped, []).append(j)
    anchors: SeedSet = []
    for content, ref_idxs in ref_occurrences.items():
        mod_idxs = mod_occurrences.get(content)
        if mod_idxs is None or len(mod_idxs) != len(ref_idxs):
            continue
        for ref_idx, mod_idx in zip(ref_idxs, mod_idxs):
            anchors.append(Seed(ref_idx, mod_idx, ADDITIONAL, [True], [True]))
    anchors.sort(key=lambda s: (s.r, s.m))
    extended = extend_seeds(
        anchors,
        reference,
        modified,
        params,
        extra_blocked_ref=taken_ref,
        extra_blocked_mod=taken_mod,
    )
    return remove_overlaps(extended)


def match(
    reference: Log,
    modified: Log,
    params: SimilarityParams | None = None,
    deadline: float | None = None,
    lcs: LcsPairing | None = None,
) -> tuple[SeedSet, SeedSet]:
    """Run the full pipeline and return (initial seeds, additional seeds)."""
    if params is None:
        params = SimilarityParams()
    if lcs is None:
        lcs = lcs_lines(reference, modified, deadline)
    initial = initial_seeds(reference, modified, lcs)
    extended = extend_seeds(initial, reference, modified, params)
    final_initial = remove_overlaps(extended)
    final_additional = additional_seeds(reference, modified, final_initial, params)
    _check_one_to_one(final_initial + final_additional)
    return final_initial, final_additional


def _check_one_to_one(seeds: SeedSet) -> None:
    seen_ref: set[int] = set()
    seen_mod: set[int] = set()
    for seed in seeds:
        for x, y in seed.pairs():
            if x in seen_ref or y in seen_mod:
                raise AssertionError("seed sets are not a one-to-one mapping")
            seen_ref.add(x)
            seen_mod.add(y)
