/** SVG renderers for the three layers.
 *
 * Constituency draws nested boxes over a terminal row; dependency
 * draws arcs above the word line (crossing arcs simply cross);
 * propbank adds span bands below the terminals.  Every clickable
 * element carries a data-id attribute with its arc id, which the DOM
 * layer uses for hit testing.
 */

import type {
  NodePayload,
  SemanticArcPayload,
  TreePayload,
} from "./types.js";

export const COL = 88;
export const ROW = 46;
const PAD = 12;

export interface Scene {
  svg: string;
  width: number;
  height: number;
}

function esc(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

/** drawn column extent; zero-width material still occupies one column */
function extent(node: NodePayload): [number, number] {
  const [a, b] = node.span;
  return [a, Math.max(b, a + 1)];
}

function walk(
  nodes: NodePayload[],
  visit: (node: NodePayload, depth: number) => void,
  depth = 0,
): void {
  for (const node of nodes) {
    visit(node, depth);
    walk(node.children, visit, depth + 1);
  }
}

function box(
  node: NodePayload,
  x: number,
  y: number,
  w: number,
  h: number,
  selected: boolean,
  extra = "",
): string {
  const cls = `node ${node.type}${selected ? " selected" : ""}${extra}`;
  const label = node.type === "trace" ? `*${node.label}*` : node.label;
  return (
    `<g data-id="${esc(node.id)}" class="${cls}">` +
    `<rect x="${x}" y="${y}" width="${w}" height="${h}" rx="4"/>` +
    `<text x="${x + w / 2}" y="${y + h / 2 + 4}" text-anchor="middle">` +
    `${esc(label)}</text></g>`
  );
}

function terminalRow(
  payload: TreePayload,
  y: number,
  selectedId: string | null,
): string {
  const parts: string[] = [];
  payload.terminals.forEach((t, i) => {
    const x = PAD + i * COL;
    const cls = `terminal${t.trace ? " trace" : ""}` +
      `${t.id === selectedId ? " selected" : ""}`;
    const text = t.trace ? `${t.form}${t.coindex ? "-" + t.coindex : ""}` : t.form;
    parts.push(
      `<g data-id="${esc(t.id)}" class="${cls}">` +
      `<text x="${x + COL / 2}" y="${y}" text-anchor="middle">` +
      `${esc(text)}</text></g>`,
    );
  });
  return parts.join("");
}

export function renderConstituency(
  payload: TreePayload,
  selectedId: string | null = null,
): Scene {
  let maxDepth = 0;
  walk(payload.tree, (_n, d) => {
    maxDepth = Math.max(maxDepth, d);
  });
  const termY = PAD + (maxDepth + 1) * ROW + 24;
  const parts: string[] = [];
  walk(payload.tree, (node, depth) => {
    if (node.type === "word" || node.type === "trace") return;
    const [a, b] = extent(node);
    const x = PAD + a * COL + depth * 3;
    const w = (b - a) * COL - depth * 6;
    parts.push(box(node, x, PAD + depth * ROW, w, ROW - 10,
                   node.id === selectedId));
    // drop lines from the box to terminal-only children
    for (const child of node.children) {
      if (child.type === "word" || child.type === "trace") {
        const [ca] = extent(child);
        const cx = PAD + ca * COL + COL / 2;
        parts.push(
          `<line class="leg" x1="${cx}" y1="${PAD + depth * ROW + ROW - 10}"` +
          ` x2="${cx}" y2="${termY - 14}"/>`,
        );
      }
    }
  });
  parts.push(terminalRow(payload, termY, selectedId));
  const width = PAD * 2 + Math.max(1, payload.terminals.length) * COL;
  const height = termY + PAD + 8;
  return { svg: svgWrap(parts, width, height), width, height };
}

export function renderDependency(
  payload: TreePayload,
  selectedId: string | null = null,
): Scene {
  const n = payload.terminals.length;
  const slotCenter = (i: number) => PAD + COL + i * COL + COL / 2;
  const centers = new Map<string, number>();
  const rows = new Map<string, number>();
  const arcs: NodePayload[] = [];
  walk(payload.tree, (node) => {
    if (node.type === "root") {
      centers.set(node.id, PAD + COL / 2);
      rows.set(node.id, 0);
    } else if (node.type === "word" || node.type === "trace") {
      const [a] = extent(node);
      centers.set(node.id, slotCenter(a));
      rows.set(node.id, 0);
    } else {
      const [a, b] = extent(node);
      centers.set(node.id, (slotCenter(a) + slotCenter(b - 1)) / 2);
      rows.set(node.id, 1);
    }
    if (node.parent) arcs.push(node);
  });
  const arcSpace = 30 + 26 * Math.max(2, n);
  const baseY = PAD + arcSpace;
  const parts: string[] = [];
  // root post
  const root = payload.tree.find((t) => t.type === "root");
  if (root) {
    parts.push(
      `<g data-id="${esc(root.id)}" class="node root` +
      `${root.id === selectedId ? " selected" : ""}">` +
      `<rect x="${PAD}" y="${baseY - 18}" width="${COL - 16}" height="24" rx="4"/>` +
      `<text x="${PAD + (COL - 16) / 2}" y="${baseY - 2}" text-anchor="middle">` +
      `${esc(root.label || "Root")}</text></g>`,
    );
  }
  // constituent boxes just above the word line
  walk(payload.tree, (node) => {
    if (node.type !== "phrasal") return;
    const [a, b] = extent(node);
    const x = PAD + COL + a * COL + 6;
    const w = (b - a) * COL - 12;
    parts.push(box(node, x, baseY - 44, w, 22, node.id === selectedId, " constituent"));
  });
  // dependency arcs child -> parent, height by distance so crossings show
  for (const node of arcs) {
    const x1 = centers.get(node.id);
    const x2 = centers.get(node.parent!);
    if (x1 === undefined || x2 === undefined) continue;
    const lift = 26 + Math.abs(x2 - x1) / COL * 14;
    const y1 = baseY - (rows.get(node.id) ? 44 : 18);
    const y2 = baseY - (rows.get(node.parent!) === 1 ? 44 : 18);
    const rel = node.fields["rel"];
    parts.push(
      `<path class="dep" data-edge="${esc(node.id)}" d="M ${x1} ${y1} ` +
      `C ${x1} ${y1 - lift}, ${x2} ${y2 - lift}, ${x2} ${y2}"/>`,
    );
    if (rel) {
      parts.push(
        `<text class="rel" x="${(x1 + x2) / 2}" y="${Math.min(y1, y2) - lift + 2}"` +
        ` text-anchor="middle">${esc(rel)}</text>`,
      );
    }
  }
  parts.push(terminalRow({ ...payload, terminals: payload.terminals },
                         baseY + 20, selectedId));
  const width = PAD * 2 + (n + 1) * COL;
  const height = baseY + 40;
  return { svg: svgWrap(parts, width, height), width, height };
}

export function renderPropbank(
  payload: TreePayload,
  selectedId: string | null = null,
): Scene {
  const base = renderConstituency(payload, selectedId);
  const bands: string[] = [];
  const semantic: SemanticArcPayload[] = payload.semantic_arcs ?? [];
  semantic.forEach((arc, i) => {
    const [a, b] = arc.span;
    const w = Math.max(b - a, 1) * COL - 8;
    const x = PAD + a * COL + 4;
    const y = base.height + i * 26;
    bands.push(
      `<g data-id="${esc(arc.id)}" class="band ${arc.type}` +
      `${arc.id === selectedId ? " selected" : ""}">` +
      `<rect x="${x}" y="${y}" width="${w}" height="20" rx="3"/>` +
      `<text x="${x + 6}" y="${y + 14}">${esc(arc.label)}</text></g>`,
    );
  });
  const height = base.height + semantic.length * 26 + PAD;
  const inner = base.svg.replace(/^<svg[^>]*>/, "").replace(/<\/svg>$/, "");
  return {
    svg: svgWrap([inner, ...bands], base.width, height),
    width: base.width,
    height,
  };
}

export function renderTree(
  payload: TreePayload,
  selectedId: string | null = null,
): Scene {
  if (payload.layer === "dependency") {
    return renderDependency(payload, selectedId);
  }
  if (payload.layer === "propbank") {
    return renderPropbank(payload, selectedId);
  }
  return renderConstituency(payload, selectedId);
}

function svgWrap(parts: string[], width: number, height: number): string {
  return (
    `<svg xmlns="http://www.w3.org/2000/svg" width="${width}" ` +
    `height="${height}" viewBox="0 0 ${width} ${height}">` +
    parts.join("") +
    `</svg>`
  );
}
