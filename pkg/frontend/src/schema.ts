/**
 * Edit-script JSON schema: types and strict validation.
 *
 * The viewer refuses to render anything from a document that does not match
 * the canonical shape; a SchemaError carries a human-readable reason for the
 * error banner.
 */

export const ACTION_KINDS = [
  "unchanged",
  "updated",
  "added",
  "deleted",
  "moved-unchanged",
  "moved-updated",
] as const;

export type ActionKind = (typeof ACTION_KINDS)[number];

export interface ActionDoc {
  kind: ActionKind;
  ref: number | null;
  mod: number | null;
  tokens_changed?: number[];
}

export interface EditScriptDoc {
  algorithm: string;
  params: { line_threshold: number; token_threshold: number };
  reference: { source: string; line_count: number };
  modified: { source: string; line_count: number };
  actions: ActionDoc[];
}

export class SchemaError extends Error {}

function fail(reason: string): never {
  throw new SchemaError(`edit script document invalid: ${reason}`);
}

function isRecord(value: unknown): value is Record<string, unknown> {
  return typeof value === "object" && value !== null && !Array.isArray(value);
}

function checkEndpoint(value: unknown, field: string): { source: string; line_count: number } {
  if (!isRecord(value)) fail(`${field} must be an object`);
  if (typeof value.source !== "string") fail(`${field}.source must be a string`);
  if (typeof value.line_count !== "number" || !Number.isInteger(value.line_count) || value.line_count < 0) {
    fail(`${field}.line_count must be a non-negative integer`);
  }
  return { source: value.source, line_count: value.line_count };
}

function checkIndex(value: unknown, field: string, limit: number): number | null {
  if (value === null) return null;
  if (typeof value !== "number" || !Number.isInteger(value)) fail(`${field} must be an integer or null`);
  if (value < 0 || value >= limit) fail(`${field} ${value} out of range [0, ${limit})`);
  return value;
}

export function parseEditScript(data: unknown): EditScriptDoc {
  if (!isRecord(data)) fail("top level must be an object");
  if (typeof data.algorithm !== "string") fail("algorithm must be a string");
  if (!isRecord(data.params)) fail("params must be an object");
  const { line_threshold, token_threshold } = data.params;
  if (typeof line_threshold !== "number" || typeof token_threshold !== "number") {
    fail("params thresholds must be numbers");
  }
  const reference = checkEndpoint(data.reference, "reference");
  const modified = checkEndpoint(data.modified, "modified");
  if (!Array.isArray(data.actions)) fail("actions must be an array");

  const actions: ActionDoc[] = [];
  const seenRef = new Set<number>();
  const seenMod = new Set<number>();
  for (const [i, raw] of data.actions.entries()) {
    if (!isRecord(raw)) fail(`actions[${i}] must be an object`);
    const kind = raw.kind;
    if (typeof kind !== "string" || !(ACTION_KINDS as readonly string[]).includes(kind)) {
      fail(`actions[${i}].kind ${JSON.stringify(kind)} unknown`);
    }
    const ref = checkIndex(raw.ref, `actions[${i}].ref`, reference.line_count);
    const mod = checkIndex(raw.mod, `actions[${i}].mod`, modified.line_count);
    if (kind === "added" && (mod === null || ref !== null)) fail(`actions[${i}]: added needs only mod`);
    if (kind === "deleted" && (ref === null || mod !== null)) fail(`actions[${i}]: deleted needs only ref`);
    if (kind !== "added" && kind !== "deleted" && (ref === null || mod === null)) {
      fail(`actions[${i}]: ${kind} needs both indices`);
    }
    if (ref !== null) {
      if (seenRef.has(ref)) fail(`reference line ${ref} appears twice`);
      seenRef.add(ref);
    }
    if (mod !== null) {
      if (seenMod.has(mod)) fail(`modified line ${mod} appears twice`);
      seenMod.add(mod);
    }
    let tokensChanged: number[] | undefined;
    if (raw.tokens_changed !== undefined) {
      if (!Array.isArray(raw.tokens_changed) || raw.tokens_changed.some((t) => !Number.isInteger(t))) {
        fail(`actions[${i}].tokens_changed must be an integer array`);
      }
      tokensChanged = raw.tokens_changed as number[];
    }
    actions.push({ kind: kind as ActionKind, ref, mod, tokens_changed: tokensChanged });
  }
  if (seenMod.size !== modified.line_count) {
    fail(`actions cover ${seenMod.size} of ${modified.line_count} modified lines`);
  }
  if (seenRef.size !== reference.line_count) {
    fail(`actions cover ${seenRef.size} of ${reference.line_count} reference lines`);
  }
  return {
    algorithm: data.algorithm,
    params: { line_threshold, token_threshold },
    reference,
    modified,
    actions,
  };
}
