import { z } from "zod";

export const QuestionSchema = z.object({
  id: z.number().int(),
  premise: z.array(z.string()),
  conclusion: z.array(z.string()),
  implicationText: z.string(),
  gciText: z.string(),
});
export type Question = z.infer<typeof QuestionSchema>;

const yesEvent = z.object({
  index: z.number().int(),
  kind: z.literal("yes"),
  premise: z.array(z.string()),
  conclusion: z.array(z.string()),
  implicationText: z.string(),
});
const noEvent = z.object({
  index: z.number().int(),
  kind: z.literal("no"),
  premise: z.array(z.string()),
  conclusion: z.array(z.string()),
  implicationText: z.string(),
  object: z.string(),
  present: z.array(z.string()),
  absent: z.array(z.string()),
});
const reorderEvent = z.object({
  index: z.number().int(),
  kind: z.literal("reorder"),
  order: z.array(z.string()),
});
export const HistoryEventSchema = z.discriminatedUnion("kind", [
  yesEvent,
  noEvent,
  reorderEvent,
]);
export type HistoryEvent = z.infer<typeof HistoryEventSchema>;

export const ContextTableSchema = z.object({
  attributes: z.array(z.string()),
  rows: z.array(z.object({ object: z.string(), cells: z.string() })),
});
export type ContextTable = z.infer<typeof ContextTableSchema>;

export const DropReportSchema = z.object({
  index: z.number().int(),
  kind: z.string(),
  reason: z.string(),
});
export type DropReport = z.infer<typeof DropReportSchema>;

export const SessionViewSchema = z.object({
  sessionId: z.string(),
  status: z.enum(["running", "paused", "complete"]),
  revision: z.number().int(),
  names: z.array(z.string()),
  order: z.array(z.string()),
  question: QuestionSchema.nullable(),
  history: z.array(HistoryEventSchema),
  context: ContextTableSchema,
  dropped: z.array(DropReportSchema).optional(),
});
export type SessionView = z.infer<typeof SessionViewSchema>;

export const CreatedSchema = z.object({
  sessionId: z.string(),
  revision: z.number().int(),
});

export const ExportSchema = z.object({
  ontology: z.string(),
  context: z.string(),
});
export type ExportData = z.infer<typeof ExportSchema>;

export interface Counterexample {
  object: string;
  present: string[];
  absent: string[];
}

/** Non-2xx response, carrying the parsed `detail` body. */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly detail: unknown,
  ) {
    super(typeof detail === "string" ? detail : JSON.stringify(detail));
    this.name = "ApiError";
  }
}

const refutationDetailSchema = z.object({
  message: z.string(),
  attributes: z.array(z.string()),
});

/** The server's attribute-level verdict on a bad counterexample, if that is
 * what this error carries. */
export function refutationDetail(
  err: unknown,
): { message: string; attributes: string[] } | null {
  if (!(err instanceof ApiError) || err.status !== 422) return null;
  const parsed = refutationDetailSchema.safeParse(err.detail);
  return parsed.success ? parsed.data : null;
}

export type FetchLike = (
  url: string,
  init?: {
    method?: string;
    headers?: Record<string, string>;
    body?: string;
  },
) => Promise<{
  ok: boolean;
  status: number;
  headers: { get(name: string): string | null };
  text(): Promise<string>;
  json(): Promise<unknown>;
}>;

export class SessionApi {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (...args) =>
      globalThis.fetch(...(args as Parameters<typeof globalThis.fetch>)),
  ) {}

  private async request(
    method: string,
    path: string,
    body?: unknown,
    contentType = "application/json",
  ): Promise<unknown> {
    const init: Parameters<FetchLike>[1] = { method };
    if (body !== undefined) {
      init.headers = { "content-type": contentType };
      init.body = typeof body === "string" ? body : JSON.stringify(body);
    }
    const response = await this.fetchFn(this.baseUrl + path, init);
    if (!response.ok) {
      let detail: unknown = null;
      try {
        detail = (await response.json() as { detail?: unknown }).detail ?? null;
      } catch {
        detail = null;
      }
      throw new ApiError(response.status, detail);
    }
    return response;
  }

  private async json(
    method: string,
    path: string,
    body?: unknown,
    contentType = "application/json",
  ): Promise<unknown> {
    const response = (await this.request(method, path, body, contentType)) as {
      json(): Promise<unknown>;
    };
    return response.json();
  }

  async create(body: {
    ontology: string;
    names: string[];
    order?: string[];
  }): Promise<{ sessionId: string; revision: number }> {
    return CreatedSchema.parse(await this.json("POST", "/sessions", body));
  }

  async createFromSnapshot(snapshot: string): Promise<{ sessionId: string; revision: number }> {
    return CreatedSchema.parse(await this.json("POST", "/sessions", { snapshot }));
  }

  async view(sessionId: string): Promise<SessionView> {
    return SessionViewSchema.parse(await this.json("GET", `/sessions/${sessionId}`));
  }

  async answerYes(sessionId: string, questionId: number, revision: number): Promise<SessionView> {
    return SessionViewSchema.parse(
      await this.json("POST", `/sessions/${sessionId}/answer`, {
        questionId,
        revision,
        verdict: "yes",
      }),
    );
  }

  async answerNo(
    sessionId: string,
    questionId: number,
    revision: number,
    counterexample: Counterexample,
  ): Promise<SessionView> {
    return SessionViewSchema.parse(
      await this.json("POST", `/sessions/${sessionId}/answer`, {
        questionId,
        revision,
        verdict: "no",
        counterexample,
      }),
    );
  }

  async undo(sessionId: string, eventIndex: number, revision: number): Promise<SessionView> {
    return SessionViewSchema.parse(
      await this.json("POST", `/sessions/${sessionId}/undo`, { eventIndex, revision }),
    );
  }

  async postpone(sessionId: string, revision: number): Promise<SessionView> {
    return SessionViewSchema.parse(
      await this.json("POST", `/sessions/${sessionId}/postpone`, { revision }),
    );
  }

  async pause(sessionId: string, revision: number): Promise<{ snapshot: string; revision: number }> {
    const response = (await this.request("POST", `/sessions/${sessionId}/pause`, {
      revision,
    })) as { headers: { get(n: string): string | null }; text(): Promise<string> };
    const snapshot = await response.text();
    const echoed = Number(response.headers.get("x-revision") ?? revision + 1);
    return { snapshot, revision: echoed };
  }

  async resume(sessionId: string, snapshot: string): Promise<SessionView> {
    return SessionViewSchema.parse(
      await this.json("POST", `/sessions/${sessionId}/resume`, snapshot, "text/plain"),
    );
  }

  async export(sessionId: string): Promise<ExportData> {
    return ExportSchema.parse(await this.json("GET", `/sessions/${sessionId}/export`));
  }
}
