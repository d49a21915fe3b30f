/** Browser glue: wires the state machine, renderers and gestures to
 * the DOM.  Input is disabled while a mutation is in flight. */

import { ServiceClient } from "./api.js";
import { dragToOps, keyToAction } from "./gestures.js";
import { renderTree } from "./render.js";
import { EditorState } from "./state.js";
import type { Layer } from "./types.js";

const LAYERS: Layer[] = ["constituency", "dependency", "propbank"];

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing #${id}`);
  return node as T;
}

export async function boot(baseUrl: string): Promise<void> {
  const client = new ServiceClient(baseUrl);
  const state = new EditorState(client);
  const docSelect = el<HTMLSelectElement>("document");
  const layerSelect = el<HTMLSelectElement>("layer");
  const canvas = el<HTMLDivElement>("canvas");
  const status = el<HTMLDivElement>("status");
  const terminals = el<HTMLDivElement>("terminals");
  let dragSource: string | null = null;

  for (const layer of LAYERS) {
    const opt = document.createElement("option");
    opt.value = opt.textContent = layer;
    layerSelect.appendChild(opt);
  }
  const docs = await client.listDocuments();
  for (const doc of docs) {
    const opt = document.createElement("option");
    opt.value = doc.id;
    opt.textContent = `${doc.id} — ${doc.terminal_string}`;
    docSelect.appendChild(opt);
  }

  function draw(): void {
    if (!state.tree) return;
    canvas.innerHTML = renderTree(state.tree, state.selected).svg;
    terminals.textContent = state.displayedTerminalString();
    status.textContent = state.pendingFeedback ??
      `revision ${state.revision}` + (state.busy ? " …" : "");
    status.classList.toggle("error", state.pendingFeedback !== null);
  }

  function hit(event: Event): string | null {
    const target = (event.target as Element).closest("[data-id]");
    return target ? target.getAttribute("data-id") : null;
  }

  async function openCurrent(): Promise<void> {
    await state.open(docSelect.value, layerSelect.value as Layer);
    draw();
  }

  canvas.addEventListener("click", (event) => {
    state.select(hit(event), (event as MouseEvent).shiftKey);
    draw();
  });

  canvas.addEventListener("mousedown", (event) => {
    dragSource = hit(event);
  });

  canvas.addEventListener("mouseup", async (event) => {
    const target = hit(event);
    if (!dragSource || !target || dragSource === target || !state.tree) {
      dragSource = null;
      return;
    }
    const plan = dragToOps(state.layer, state.tree, dragSource, target);
    dragSource = null;
    if (!plan.ok) {
      state.pendingFeedback = plan.message;
      draw();
      return;
    }
    for (const op of plan.ops) {
      if (!(await state.applyOperation(op))) break;
    }
    draw();
  });

  document.addEventListener("keydown", async (event) => {
    if (state.busy) return;
    const action = keyToAction(event.key, state);
    if (!action) return;
    event.preventDefault();
    if (action.kind === "undo") {
      await state.undo();
    } else {
      await state.applyOperation(action.op);
    }
    draw();
  });

  docSelect.addEventListener("change", openCurrent);
  layerSelect.addEventListener("change", openCurrent);
  if (docs.length) {
    docSelect.value = docs[0].id;
    await openCurrent();
  }
}

declare global {
  interface Window {
    treegraphBoot: typeof boot;
  }
}

if (typeof window !== "undefined") {
  window.treegraphBoot = boot;
}
