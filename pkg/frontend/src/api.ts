// Typed client for the answer service. The fetch function is injectable so
// tests can run against a scripted transport.

export type Mode = "full" | "no_fusion_concat" | "text_only";

export interface QueryParams {
  question: string;
  top_k: number;
  mode: Mode;
}

export interface SourceCard {
  chunk_id: string;
  pmid: string;
  section_title: string;
  text: string;
  score: number;
}

export interface ImageRef {
  image_id: string;
  url: string;
}

export interface AnswerPayload {
  answer: string;
  cited_sources: SourceCard[];
  images: ImageRef[];
  mode: Mode;
  degraded: boolean;
  latency_ms: number;
}

export interface ApiErrorBody {
  error: { code: string; message: string };
}

export class ApiError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number,
  ) {
    super(message);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export async function submitQuery(
  params: QueryParams,
  fetchFn: FetchLike = fetch,
): Promise<AnswerPayload> {
  let response: Response;
  try {
    response = await fetchFn("/api/query", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(params),
    });
  } catch (err) {
    throw new ApiError("network", String(err), 0);
  }
  if (!response.ok) {
    let code = "internal";
    let message = `request failed with status ${response.status}`;
    try {
      const body = (await response.json()) as ApiErrorBody;
      code = body.error.code;
      message = body.error.message;
    } catch {
      // non-JSON error body; keep the status-based message
    }
    throw new ApiError(code, message, response.status);
  }
  return (await response.json()) as AnswerPayload;
}
