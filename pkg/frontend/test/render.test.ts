import { describe, expect, it } from "vitest";

import { renderConstituency, renderDependency } from "../src/render.js";
import { terminalStringOf } from "../src/state.js";
import type { NodePayload, TreePayload } from "../src/types.js";

function word(id: string, form: string, slot: number): NodePayload {
  return {
    id, type: "word", label: form, fields: { form },
    span: [slot, slot + 1], parent: null, children: [],
  };
}

const constituency: TreePayload = {
  id: "doc",
  revision: 0,
  layer: "constituency",
  terminal_string: "B C D",
  terminals: [
    { id: "e0", form: "B", trace: false, coindex: null },
    { id: "e1", form: "C", trace: false, coindex: null },
    { id: "e2", form: "D", trace: false, coindex: null },
  ],
  tree: [{
    id: "e3", type: "phrasal", label: "A", fields: { label: "A" },
    span: [0, 3], parent: null,
    children: [
      { ...word("e0", "B", 0), parent: "e3" },
      { ...word("e1", "C", 1), parent: "e3" },
      { ...word("e2", "D", 2), parent: "e3" },
    ],
  }],
};

const dependency: TreePayload = {
  id: "dep",
  revision: 0,
  layer: "dependency",
  terminal_string: "w1 w2",
  terminals: [
    { id: "e0", form: "w1", trace: false, coindex: null },
    { id: "e1", form: "w2", trace: false, coindex: null },
  ],
  tree: [{
    id: "e2", type: "root", label: "Root", fields: { label: "Root" },
    span: [0, 2], parent: null,
    children: [
      { ...word("e0", "w1", 0), parent: "e2" },
      {
        ...word("e1", "w2", 1), parent: "e2",
        fields: { form: "w2", rel: "SUBJ" },
      },
    ],
  }],
};

describe("renderConstituency", () => {
  it("draws one clickable box per node and every terminal", () => {
    const scene = renderConstituency(constituency, null);
    for (const id of ["e0", "e1", "e2", "e3"]) {
      expect(scene.svg).toContain(`data-id="${id}"`);
    }
    expect(scene.svg).toContain(">A<");
    expect(scene.svg).toContain(">C<");
  });

  it("marks the selected node", () => {
    const scene = renderConstituency(constituency, "e1");
    expect(scene.svg).toMatch(/class="terminal selected"/);
  });

  it("escapes markup in labels", () => {
    const hostile = structuredClone(constituency);
    hostile.tree[0].label = "<script>";
    const scene = renderConstituency(hostile, null);
    expect(scene.svg).not.toContain("<script>");
    expect(scene.svg).toContain("&lt;script&gt;");
  });

  it("gives zero-width traces a visible column", () => {
    const withTrace = structuredClone(constituency);
    withTrace.terminals.splice(1, 0,
      { id: "e9", form: "*", trace: true, coindex: "1" });
    withTrace.terminal_string = "B C D";
    expect(terminalStringOf(withTrace)).toBe("B C D");
    const scene = renderConstituency(withTrace, null);
    expect(scene.svg).toContain("*-1");
  });
});

describe("renderDependency", () => {
  it("draws arcs above the word line with relation labels", () => {
    const scene = renderDependency(dependency, null);
    expect(scene.svg).toContain('data-edge="e0"');
    expect(scene.svg).toContain('data-edge="e1"');
    expect(scene.svg).toContain(">SUBJ<");
    expect(scene.svg).toContain(">Root<");
  });

  it("keeps crossing arcs drawable (no layout failure)", () => {
    const crossing = structuredClone(dependency);
    // w1 under w2 while w2 stays under root: arcs overlap in x
    const root = crossing.tree[0];
    const w1 = root.children[0];
    const w2 = root.children[1];
    w1.parent = w2.id;
    w2.children = [w1];
    root.children = [w2];
    const scene = renderDependency(crossing, null);
    expect(scene.svg).toContain('data-edge="e0"');
    expect(scene.svg).toContain('data-edge="e1"');
  });
});
