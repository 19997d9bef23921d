/**
 * Pure view logic: join the failing log with an edit script, fold around
 * added lines, reveal hidden action classes, pair two scripts for blind
 * comparison. No DOM access here; render.ts paints the result.
 */

import { ActionKind, EditScriptDoc, SchemaError } from "./schema.js";

/** Leading ISO-8601 timestamp plus one space, as in raw GitHub Actions logs. */
const TIMESTAMP = /^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}(?:\.\d+)?(?:Z|[+-]\d{2}:?\d{2})? /;

export function stripTimestamp(line: string): string {
  return line.replace(TIMESTAMP, "");
}

export function splitLogText(text: string): string[] {
  if (text === "") return [];
  const parts = text.split("\n");
  if (parts[parts.length - 1] === "") parts.pop();
  return parts.map((p) => (p.endsWith("\r") ? p.slice(0, -1) : p));
}

export type RowKind = Exclude<ActionKind, "deleted">;

export interface LineRow {
  index: number;
  text: string;
  kind: RowKind;
  /** token positions to highlight, for updated and moved-updated lines */
  tokensChanged: number[] | null;
}

export type ToggleClass = "unchanged" | "updated" | "moved";

export interface ViewModel {
  algorithm: string;
  caseId: string;
  lines: LineRow[];
  context: number;
  reveal: Record<ToggleClass, boolean>;
  /** line indices force-shown by expanding a fold gap */
  expanded: ReadonlySet<number>;
}

export type Row =
  | { type: "line"; line: LineRow }
  | { type: "gap"; start: number; count: number };

const CLASS_OF_KIND: Record<RowKind, ToggleClass | "added"> = {
  unchanged: "unchanged",
  updated: "updated",
  added: "added",
  "moved-unchanged": "moved",
  "moved-updated": "moved",
};

export const DEFAULT_CONTEXT = 3;

export function buildViewModel(
  logText: string,
  script: EditScriptDoc,
  caseId = "case",
): ViewModel {
  const texts = splitLogText(logText);
  if (texts.length !== script.modified.line_count) {
    throw new SchemaError(
      `log has ${texts.length} lines but the edit script describes ` +
        `${script.modified.line_count}`,
    );
  }
  const lines: LineRow[] = texts.map((raw, index) => ({
    index,
    text: stripTimestamp(raw),
    kind: "unchanged",
    tokensChanged: null,
  }));
  for (const action of script.actions) {
    if (action.mod === null) continue; // deleted lines never appear
    const row = lines[action.mod];
    if (row === undefined) continue;
    row.kind = action.kind as RowKind;
    row.tokensChanged = action.tokens_changed ?? null;
  }
  return {
    algorithm: script.algorithm,
    caseId,
    lines,
    context: DEFAULT_CONTEXT,
    reveal: { unchanged: false, updated: false, moved: false },
    expanded: new Set(),
  };
}

export function countsByKind(vm: ViewModel): Record<RowKind, number> {
  const counts: Record<RowKind, number> = {
    unchanged: 0,
    updated: 0,
    added: 0,
    "moved-unchanged": 0,
    "moved-updated": 0,
  };
  for (const line of vm.lines) counts[line.kind] += 1;
  return counts;
}

/** Indices visible under the current fold: added lines, their context window,
 * revealed classes and manually expanded gap lines. */
export function visibleIndices(vm: ViewModel): Set<number> {
  const visible = new Set<number>();
  const last = vm.lines.length - 1;
  for (const line of vm.lines) {
    if (line.kind === "added") {
      const lo = Math.max(0, line.index - vm.context);
      const hi = Math.min(last, line.index + vm.context);
      for (let i = lo; i <= hi; i++) visible.add(i);
    } else if (vm.reveal[CLASS_OF_KIND[line.kind] as ToggleClass]) {
      visible.add(line.index);
    }
  }
  for (const i of vm.expanded) visible.add(i);
  return visible;
}

/** The render list: visible lines interleaved with collapsed-gap markers. */
export function rows(vm: ViewModel): Row[] {
  const visible = visibleIndices(vm);
  const out: Row[] = [];
  let gapStart = -1;
  for (const line of vm.lines) {
    if (visible.has(line.index)) {
      if (gapStart >= 0) {
        out.push({ type: "gap", start: gapStart, count: line.index - gapStart });
        gapStart = -1;
      }
      out.push({ type: "line", line });
    } else if (gapStart < 0) {
      gapStart = line.index;
    }
  }
  if (gapStart >= 0) {
    out.push({ type: "gap", start: gapStart, count: vm.lines.length - gapStart });
  }
  return out;
}

export function setContext(vm: ViewModel, context: number): ViewModel {
  if (context < 0) throw new RangeError("context must be >= 0");
  return { ...vm, context };
}

export function toggleHidden(vm: ViewModel, cls: ToggleClass): ViewModel {
  return { ...vm, reveal: { ...vm.reveal, [cls]: !vm.reveal[cls] } };
}

export function expandGap(vm: ViewModel, start: number, count: number): ViewModel {
  const expanded = new Set(vm.expanded);
  for (let i = start; i < start + count; i++) expanded.add(i);
  return { ...vm, expanded };
}

// --- comparison / blind study -------------------------------------------

export interface Pane {
  label: string;
  vm: ViewModel;
}

export interface CompareView {
  left: Pane;
  right: Pane;
  blind: boolean;
}

/** Deterministic per-case order so a study session is reproducible. */
export function paneOrder(caseId: string): [number, number] {
  let hash = 2166136261;
  for (let i = 0; i < caseId.length; i++) {
    hash ^= caseId.charCodeAt(i);
    hash = Math.imul(hash, 16777619);
  }
  return (hash & 1) === 0 ? [0, 1] : [1, 0];
}

export function compareMode(a: ViewModel, b: ViewModel, blind: boolean): CompareView {
  if (a.lines.length !== b.lines.length) {
    throw new SchemaError(
      `the two edit scripts describe different failing logs ` +
        `(${a.lines.length} vs ${b.lines.length} lines)`,
    );
  }
  const caseId = a.caseId;
  if (!blind) {
    return { left: { label: a.algorithm, vm: a }, right: { label: b.algorithm, vm: b }, blind };
  }
  const [first] = paneOrder(caseId);
  const panes: Pane[] = [
    { label: "alpha", vm: first === 0 ? a : b },
    { label: "beta", vm: first === 0 ? b : a },
  ];
  return { left: panes[0]!, right: panes[1]!, blind };
}

export type Choice = "alpha" | "beta" | "none";

export interface PreferenceRecord {
  case: string;
  choice: Choice;
}

export function recordPreference(
  records: readonly PreferenceRecord[],
  caseId: string,
  choice: Choice,
): PreferenceRecord[] {
  const kept = records.filter((r) => r.case !== caseId);
  return [...kept, { case: caseId, choice }];
}

export function exportPreferences(records: readonly PreferenceRecord[]): string {
  return JSON.stringify(records, null, 2);
}
