/** Thin typed client for the edit service; the editor never builds
 * tree structure itself, it only displays what these calls return. */

import type {
  DocumentSummary,
  Layer,
  OpRequest,
  ServiceError,
  TreePayload,
} from "./types.js";

export type OpResult =
  | { ok: true; payload: TreePayload }
  | { ok: false; error: ServiceError };

async function errorOf(response: Response): Promise<ServiceError> {
  let code = "error";
  let message = response.statusText;
  try {
    const body = await response.json();
    if (body && typeof body.detail === "object" && body.detail !== null) {
      code = body.detail.code ?? code;
      message = body.detail.message ?? message;
    } else if (typeof body?.detail === "string") {
      message = body.detail;
    }
  } catch {
    /* non-JSON error body */
  }
  return { status: response.status, code, message };
}

export class ServiceClient {
  constructor(
    public baseUrl: string,
    private fetchFn: typeof fetch = fetch,
  ) {}

  private url(path: string): string {
    return this.baseUrl.replace(/\/$/, "") + path;
  }

  async listDocuments(): Promise<DocumentSummary[]> {
    const r = await this.fetchFn(this.url("/documents"));
    if (!r.ok) throw new Error(`listDocuments failed: ${r.status}`);
    return (await r.json()).documents;
  }

  async getTree(id: string, layer?: Layer): Promise<TreePayload> {
    const q = layer ? `?layer=${layer}` : "";
    const r = await this.fetchFn(this.url(`/documents/${id}/tree${q}`));
    if (!r.ok) throw new Error(`getTree failed: ${r.status}`);
    return await r.json();
  }

  async postOp(
    id: string,
    revision: number,
    op: OpRequest,
    layer?: Layer,
  ): Promise<OpResult> {
    const r = await this.fetchFn(this.url(`/documents/${id}/op`), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ revision, ...op, layer }),
    });
    if (!r.ok) return { ok: false, error: await errorOf(r) };
    return { ok: true, payload: await r.json() };
  }

  async undo(id: string, layer?: Layer): Promise<OpResult> {
    const q = layer ? `?layer=${layer}` : "";
    const r = await this.fetchFn(this.url(`/documents/${id}/undo${q}`), {
      method: "POST",
    });
    if (!r.ok) return { ok: false, error: await errorOf(r) };
    return { ok: true, payload: await r.json() };
  }

  async replay(id: string): Promise<{ consistent: boolean; revision: number }> {
    const r = await this.fetchFn(this.url(`/documents/${id}/replay`), {
      method: "POST",
    });
    if (!r.ok) throw new Error(`replay failed: ${r.status}`);
    return await r.json();
  }
}
