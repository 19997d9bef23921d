/**
 * Wiring: local file loading, fold/reveal controls, blind A/B comparison and
 * preference export. Everything runs client-side; the page works from a
 * static file server on CI artifacts.
 */

import { parseEditScript, SchemaError } from "./schema.js";
import { renderBanner, renderView } from "./render.js";
import {
  Choice,
  PreferenceRecord,
  ToggleClass,
  ViewModel,
  buildViewModel,
  compareMode,
  exportPreferences,
  recordPreference,
  setContext,
  toggleHidden,
} from "./viewmodel.js";

interface AppState {
  logText: string | null;
  caseId: string;
  scriptA: ViewModel | null;
  scriptB: ViewModel | null;
  blind: boolean;
  preferences: PreferenceRecord[];
}

const state: AppState = {
  logText: null,
  caseId: "case",
  scriptA: null,
  scriptB: null,
  blind: false,
  preferences: [],
};

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function readFile(input: HTMLInputElement): Promise<string | null> {
  const file = input.files?.[0];
  if (!file) return Promise.resolve(null);
  return file.text();
}

function loadScript(text: string, caseId: string): ViewModel {
  const doc = parseEditScript(JSON.parse(text));
  return buildViewModel(state.logText ?? "", doc, caseId);
}

function applyToPanes(f: (vm: ViewModel) => ViewModel): void {
  if (state.scriptA) state.scriptA = f(state.scriptA);
  if (state.scriptB) state.scriptB = f(state.scriptB);
  repaint();
}

function repaint(): void {
  const left = el<HTMLElement>("pane-left");
  const right = el<HTMLElement>("pane-right");
  const leftLabel = el<HTMLElement>("pane-left-label");
  const rightLabel = el<HTMLElement>("pane-right-label");
  right.parentElement!.classList.toggle("hidden", state.scriptB === null);
  if (!state.scriptA) {
    renderBanner(left, "load a failing log and an edit-script JSON to begin");
    return;
  }
  try {
    if (state.scriptB) {
      const view = compareMode(state.scriptA, state.scriptB, state.blind);
      leftLabel.textContent = view.left.label;
      rightLabel.textContent = view.right.label;
      renderView(left, view.left.vm, { onViewModelChange: replaceVm(view.left.vm) });
      renderView(right, view.right.vm, { onViewModelChange: replaceVm(view.right.vm) });
    } else {
      leftLabel.textContent = state.blind ? "alpha" : state.scriptA.algorithm;
      renderView(left, state.scriptA, { onViewModelChange: replaceVm(state.scriptA) });
    }
  } catch (err) {
    if (err instanceof SchemaError) {
      renderBanner(left, err.message);
    } else {
      throw err;
    }
  }
}

function replaceVm(old: ViewModel): (vm: ViewModel) => void {
  return (vm) => {
    if (state.scriptA === old) state.scriptA = vm;
    else if (state.scriptB === old) state.scriptB = vm;
    repaint();
  };
}

function bindLoaders(): void {
  el<HTMLInputElement>("file-log").addEventListener("change", async (ev) => {
    const input = ev.target as HTMLInputElement;
    const text = await readFile(input);
    if (text === null) return;
    state.logText = text;
    state.caseId = input.files?.[0]?.name ?? "case";
    state.scriptA = null;
    state.scriptB = null;
    repaint();
  });
  for (const [id, slot] of [
    ["file-script-a", "scriptA"],
    ["file-script-b", "scriptB"],
  ] as const) {
    el<HTMLInputElement>(id).addEventListener("change", async (ev) => {
      const text = await readFile(ev.target as HTMLInputElement);
      if (text === null) return;
      try {
        state[slot] = loadScript(text, state.caseId);
      } catch (err) {
        if (err instanceof SchemaError || err instanceof SyntaxError) {
          renderBanner(el("pane-left"), err.message);
          return;
        }
        throw err;
      }
      repaint();
    });
  }
}

function bindControls(): void {
  for (const cls of ["unchanged", "updated", "moved"] as ToggleClass[]) {
    el<HTMLInputElement>(`toggle-${cls}`).addEventListener("change", () => {
      applyToPanes((vm) => toggleHidden(vm, cls));
    });
  }
  el<HTMLInputElement>("context").addEventListener("change", (ev) => {
    const value = Number((ev.target as HTMLInputElement).value);
    if (Number.isInteger(value) && value >= 0) {
      applyToPanes((vm) => setContext(vm, value));
    }
  });
  el<HTMLInputElement>("blind").addEventListener("change", (ev) => {
    state.blind = (ev.target as HTMLInputElement).checked;
    repaint();
  });
  el<HTMLInputElement>("palette").addEventListener("change", (ev) => {
    document.body.classList.toggle("alt-palette", (ev.target as HTMLInputElement).checked);
  });
  for (const choice of ["alpha", "beta", "none"] as Choice[]) {
    el<HTMLButtonElement>(`prefer-${choice}`).addEventListener("click", () => {
      state.preferences = recordPreference(state.preferences, state.caseId, choice);
      el("preference-count").textContent = `${state.preferences.length} recorded`;
    });
  }
  el<HTMLButtonElement>("export-preferences").addEventListener("click", () => {
    const blob = new Blob([exportPreferences(state.preferences)], {
      type: "application/json",
    });
    const url = URL.createObjectURL(blob);
    const a = document.createElement("a");
    a.href = url;
    a.download = "preferences.json";
    a.click();
    URL.revokeObjectURL(url);
  });
}

bindLoaders();
bindControls();
repaint();
