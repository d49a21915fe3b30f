/** Keyboard bindings and drag translation.
 *
 * Every gesture maps to exact module operations so the server-side op
 * log stays replayable: dragging is move_subtree in the dependency
 * layer and a demote in the constituency layer (adjacent phrasal
 * sibling targets only).
 */

import { findNode } from "./state.js";
import type { EditorState } from "./state.js";
import type { Layer, NodePayload, OpRequest, TreePayload } from "./types.js";

export const KEY_BINDINGS: Record<string, string> = {
  d: "move_down",
  u: "move_up",
  ArrowRight: "promote_right",
  ArrowLeft: "promote_left",
  ">": "demote_right",
  "<": "demote_left",
  g: "group",
  t: "insert_trace",
  T: "delete_trace",
  z: "undo",
};

export type KeyAction =
  | { kind: "op"; op: OpRequest }
  | { kind: "undo" }
  | null;

export function keyToAction(key: string, state: EditorState): KeyAction {
  const name = KEY_BINDINGS[key];
  if (!name) return null;
  if (name === "undo") return { kind: "undo" };
  if (!state.selected) return null;
  const selector = "#" + state.selected;
  if (name === "group") {
    const params: Record<string, unknown> = {};
    if (state.rangeEnd && state.rangeEnd !== state.selected) {
      params["to"] = "#" + state.rangeEnd;
    }
    return { kind: "op", op: { op: "group", selector, params } };
  }
  if (name === "insert_trace") {
    return {
      kind: "op",
      op: { op: "insert_trace", selector, params: { position: "before" } },
    };
  }
  return { kind: "op", op: { op: name, selector, params: {} } };
}

export type DragResult =
  | { ok: true; ops: OpRequest[] }
  | { ok: false; message: string };

export function dragToOps(
  layer: Layer,
  payload: TreePayload,
  sourceId: string,
  targetId: string,
): DragResult {
  if (sourceId === targetId) {
    return { ok: false, message: "dropped a node onto itself" };
  }
  if (layer === "dependency") {
    return {
      ok: true,
      ops: [{
        op: "move_subtree",
        selector: "#" + sourceId,
        params: { target: "#" + targetId },
      }],
    };
  }
  const source = findNode(payload, sourceId);
  const target = findNode(payload, targetId);
  if (!source || !target) {
    return { ok: false, message: "unknown drag endpoint" };
  }
  if (target.type !== "phrasal") {
    return { ok: false, message: "drop target must be a phrasal node" };
  }
  if (target.parent !== source.parent) {
    return {
      ok: false,
      message: "constituency drags move a node into an adjacent sibling",
    };
  }
  const siblings = siblingOrder(payload, source.parent);
  const i = siblings.indexOf(sourceId);
  const j = siblings.indexOf(targetId);
  if (j === i + 1) {
    return {
      ok: true,
      ops: [{ op: "demote_right", selector: "#" + sourceId, params: {} }],
    };
  }
  if (j === i - 1) {
    return {
      ok: true,
      ops: [{ op: "demote_left", selector: "#" + sourceId, params: {} }],
    };
  }
  return {
    ok: false,
    message: "only adjacent siblings can absorb a dragged node",
  };
}

function siblingOrder(payload: TreePayload, parent: string | null): string[] {
  let nodes: NodePayload[];
  if (parent === null) {
    nodes = payload.tree;
  } else {
    const host = findNode(payload, parent);
    nodes = host ? host.children : [];
  }
  return nodes.map((n) => n.id);
}
