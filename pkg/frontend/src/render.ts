/**
 * DOM painting for a ViewModel. Rows render in batches through
 * requestAnimationFrame so very long logs stay responsive; folding keeps the
 * row count small in the common case anyway.
 */

import { Row, ViewModel, expandGap, rows } from "./viewmodel.js";

const BATCH = 2000;

export interface RenderCallbacks {
  onViewModelChange: (vm: ViewModel) => void;
}

export function renderBanner(container: HTMLElement, message: string): void {
  container.textContent = "";
  const banner = document.createElement("div");
  banner.className = "banner error";
  banner.textContent = message;
  container.appendChild(banner);
}

export function renderNotice(container: HTMLElement, message: string): void {
  const note = document.createElement("div");
  note.className = "banner notice";
  note.textContent = message;
  container.appendChild(note);
}

function renderTokens(row: HTMLElement, text: string, changed: number[]): void {
  const parts = text.split(/(\s+)/); // keep separators
  let tokenPos = 0;
  for (const part of parts) {
    if (part === "") continue;
    if (/^\s+$/.test(part)) {
      row.appendChild(document.createTextNode(part));
      continue;
    }
    if (changed.includes(tokenPos)) {
      const span = document.createElement("span");
      span.className = "tok-changed";
      span.textContent = part;
      row.appendChild(span);
    } else {
      row.appendChild(document.createTextNode(part));
    }
    tokenPos += 1;
  }
}

export function renderView(
  container: HTMLElement,
  vm: ViewModel,
  callbacks: RenderCallbacks,
): void {
  container.textContent = "";
  const list = rows(vm);
  if (vm.lines.length > 0 && list.length === 1 && list[0]!.type === "gap") {
    renderNotice(container, "no changes: every line is folded");
  }
  let next = 0;
  const paint = () => {
    const slice = list.slice(next, next + BATCH);
    const fragment = document.createDocumentFragment();
    for (const row of slice) {
      fragment.appendChild(renderRow(row, vm, callbacks));
    }
    container.appendChild(fragment);
    next += slice.length;
    if (next < list.length) {
      requestAnimationFrame(paint);
    }
  };
  paint();
}

function renderRow(row: Row, vm: ViewModel, callbacks: RenderCallbacks): HTMLElement {
  if (row.type === "gap") {
    const el = document.createElement("div");
    el.className = "row gap";
    el.textContent = `… ${row.count} hidden line${row.count === 1 ? "" : "s"} …`;
    el.title = "click to expand";
    el.addEventListener("click", () => {
      callbacks.onViewModelChange(expandGap(vm, row.start, row.count));
    });
    return el;
  }
  const line = row.line;
  const el = document.createElement("div");
  el.className = `row line kind-${line.kind}`;
  const no = document.createElement("span");
  no.className = "lineno";
  no.textContent = String(line.index + 1);
  el.appendChild(no);
  const body = document.createElement("span");
  body.className = "text";
  if (line.tokensChanged && line.tokensChanged.length > 0) {
    renderTokens(body, line.text, line.tokensChanged);
  } else {
    body.textContent = line.text === "" ? " " : line.text;
  }
  el.appendChild(body);
  return el;
}
