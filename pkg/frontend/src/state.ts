/** Editor state machine.
 *
 * All structure comes from the service; after every response the
 * displayed terminal string is re-checked against the document's, so
 * the view can never silently drift from the model.  One mutation is
 * in flight at a time; a precondition failure (422) or revision
 * conflict (409) surfaces the server's message verbatim and changes
 * nothing else.
 */

import { ServiceClient } from "./api.js";
import type { Layer, NodePayload, OpRequest, TreePayload } from "./types.js";

export function terminalStringOf(payload: TreePayload): string {
  return payload.terminals
    .filter((t) => !t.trace)
    .map((t) => t.form)
    .join(" ");
}

export function findNode(
  payload: TreePayload,
  id: string,
): NodePayload | null {
  const stack = [...payload.tree];
  while (stack.length) {
    const node = stack.pop()!;
    if (node.id === id) return node;
    stack.push(...node.children);
  }
  return null;
}

export class EditorState {
  documentId = "";
  layer: Layer = "constituency";
  tree: TreePayload | null = null;
  /** the oriented node: operations apply here and it stays selected */
  selected: string | null = null;
  /** second end of a sibling range, for group */
  rangeEnd: string | null = null;
  pendingFeedback: string | null = null;
  busy = false;

  constructor(private client: ServiceClient) {}

  get revision(): number {
    return this.tree?.revision ?? -1;
  }

  displayedTerminalString(): string {
    return this.tree ? terminalStringOf(this.tree) : "";
  }

  private adopt(payload: TreePayload): void {
    if (terminalStringOf(payload) !== payload.terminal_string) {
      throw new Error(
        "displayed terminal string diverged from the document's",
      );
    }
    this.tree = payload;
    if (this.selected && !findNode(payload, this.selected)) {
      this.selected = null;
    }
    if (this.rangeEnd && !findNode(payload, this.rangeEnd)) {
      this.rangeEnd = null;
    }
  }

  async open(documentId: string, layer?: Layer): Promise<void> {
    if (layer) this.layer = layer;
    this.documentId = documentId;
    this.selected = null;
    this.rangeEnd = null;
    this.pendingFeedback = null;
    this.adopt(await this.client.getTree(documentId, this.layer));
  }

  select(nodeId: string | null, extend = false): void {
    if (extend && this.selected) {
      this.rangeEnd = nodeId;
      return;
    }
    this.selected = nodeId;
    this.rangeEnd = null;
  }

  async applyOperation(op: OpRequest): Promise<boolean> {
    if (!this.tree || this.busy) return false;
    this.busy = true;
    this.pendingFeedback = null;
    try {
      const result = await this.client.postOp(
        this.documentId,
        this.tree.revision,
        op,
        this.layer,
      );
      if (!result.ok) {
        this.pendingFeedback = result.error.message;
        return false;
      }
      this.adopt(result.payload);
      return true;
    } finally {
      this.busy = false;
    }
  }

  async undo(): Promise<boolean> {
    if (!this.tree || this.busy) return false;
    this.busy = true;
    this.pendingFeedback = null;
    try {
      const result = await this.client.undo(this.documentId, this.layer);
      if (!result.ok) {
        this.pendingFeedback = result.error.message;
        return false;
      }
      this.adopt(result.payload);
      return true;
    } finally {
      this.busy = false;
    }
  }

  async replayConsistent(): Promise<boolean> {
    const r = await this.client.replay(this.documentId);
    return r.consistent;
  }
}
