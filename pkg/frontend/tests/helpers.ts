import type { FetchLike, SessionView } from "../src/api.js";

export const NAMES = [
  "AsianCountry",
  "EUmember",
  "EuropeanCountry",
  "G8member",
  "MediterraneanCountry",
];

/** A server view shaped like the countries session at its first question. */
export function makeView(overrides: Partial<SessionView> = {}): SessionView {
  return {
    sessionId: "abc123",
    status: "running",
    revision: 1,
    names: [...NAMES],
    order: [...NAMES],
    question: {
      id: 1,
      premise: ["G8member", "MediterraneanCountry"],
      conclusion: ["EUmember", "EuropeanCountry"],
      implicationText: "{G8member, MediterraneanCountry} -> {EUmember, EuropeanCountry}",
      gciText: "G8member and MediterraneanCountry => EUmember and EuropeanCountry",
    },
    history: [],
    context: {
      attributes: [...NAMES],
      rows: [
        { object: "Syria", cells: "+---+" },
        { object: "Turkey", cells: "+-+-+" },
        { object: "France", cells: "-++++" },
        { object: "Germany", cells: "-+++-" },
        { object: "Switzerland", cells: "--+--" },
        { object: "USA", cells: "---+-" },
      ],
    },
    ...overrides,
  };
}

export interface RecordedRequest {
  method: string;
  path: string;
  body: unknown;
  contentType: string | null;
}

export interface CannedResponse {
  status?: number;
  json?: unknown;
  text?: string;
  headers?: Record<string, string>;
}

/** FIFO fetch stub: each call consumes one canned response and records the
 * request for assertions on the wire contract. */
export function recordingFetch(queue: CannedResponse[]): {
  fetchFn: FetchLike;
  requests: RecordedRequest[];
} {
  const requests: RecordedRequest[] = [];
  const fetchFn: FetchLike = (url, init) => {
    const canned = queue.shift();
    if (canned === undefined) {
      throw new Error(`unexpected request ${init?.method ?? "GET"} ${url}`);
    }
    const headers = init?.headers ?? {};
    let body: unknown = init?.body ?? null;
    if (
      typeof body === "string" &&
      (headers["content-type"] ?? "").includes("json")
    ) {
      body = JSON.parse(body);
    }
    requests.push({
      method: init?.method ?? "GET",
      path: url.replace(/^https?:\/\/[^/]+/, ""),
      body,
      contentType: headers["content-type"] ?? null,
    });
    const status = canned.status ?? 200;
    const payload = canned.json !== undefined ? canned.json : null;
    return Promise.resolve({
      ok: status >= 200 && status < 300,
      status,
      headers: {
        get: (name: string) => canned.headers?.[name.toLowerCase()] ?? null,
      },
      text: () => Promise.resolve(canned.text ?? JSON.stringify(payload)),
      json: () =>
        canned.text !== undefined
          ? Promise.resolve(JSON.parse(canned.text))
          : Promise.resolve(payload),
    });
  };
  return { fetchFn, requests };
}
