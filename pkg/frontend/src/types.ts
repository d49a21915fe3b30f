/** Payload shapes of the edit service. */

export interface TerminalPayload {
  id: string;
  form: string;
  trace: boolean;
  coindex: string | null;
}

export interface NodePayload {
  id: string;
  type: "word" | "phrasal" | "root" | "trace" | "pred" | "arg" | "mod";
  label: string;
  fields: Record<string, string>;
  /** terminal-slot interval [from, to); zero width for traces */
  span: [number, number];
  parent: string | null;
  children: NodePayload[];
}

export interface PropositionPayload {
  pred_arc: string;
  predicate: string[];
  arguments: Record<string, string[]>;
  modifiers: Record<string, string[]>;
  equivalences: string[][];
  text: string;
}

export interface SemanticArcPayload {
  id: string;
  type: string;
  label: string;
  refs: string[];
  span: [number, number];
}

export type Layer = "constituency" | "dependency" | "propbank";

export interface TreePayload {
  id: string;
  revision: number;
  layer: Layer;
  terminal_string: string;
  terminals: TerminalPayload[];
  tree: NodePayload[];
  propositions?: PropositionPayload[];
  semantic_arcs?: SemanticArcPayload[];
}

export interface DocumentSummary {
  id: string;
  revision: number;
  kind: string;
  terminal_string: string;
}

export interface OpRequest {
  op: string;
  selector: string | null;
  params: Record<string, unknown>;
}

export interface ServiceError {
  status: number;
  code: string;
  message: string;
}
