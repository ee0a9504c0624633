import {
  ApiError,
  refutationDetail,
  type DropReport,
  type ExportData,
  type SessionApi,
  type SessionView,
} from "./api.js";
import {
  emptyRow,
  refutationPreview,
  rowToCounterexampleParts,
  type CellRow,
  type CellState,
  type RefutationPreview,
} from "./refute.js";

export interface Banner {
  kind: "conflict" | "error" | "info";
  text: string;
}

export interface CounterexampleDraft {
  object: string;
  cells: CellRow;
}

export interface InlineErrors {
  message: string;
  attributes: string[];
}

type Listener = () => void;

/** All session state round-trips through the server view and its revision
 * token; nothing here survives a reload beyond the session id itself. */
export class SessionStore {
  view: SessionView | null = null;
  banner: Banner | null = null;
  /** attribute-level server verdict from a rejected counterexample */
  inlineErrors: InlineErrors | null = null;
  /** open counterexample editor, or null when closed */
  draft: CounterexampleDraft | null = null;
  dropReports: DropReport[] = [];
  exportData: ExportData | null = null;
  lastSnapshot: string | null = null;

  private sessionId: string | null = null;
  private listeners: Listener[] = [];
  private chain: Promise<void> = Promise.resolve();

  constructor(private readonly api: SessionApi) {}

  subscribe(listener: Listener): () => void {
    this.listeners.push(listener);
    return () => {
      this.listeners = this.listeners.filter((l) => l !== listener);
    };
  }

  /** Settles when every action queued so far has finished. */
  idle(): Promise<void> {
    return this.chain;
  }

  private emit(): void {
    for (const listener of [...this.listeners]) listener();
  }

  private enqueue(action: () => Promise<void>): Promise<void> {
    this.chain = this.chain.then(action, action);
    return this.chain;
  }

  private applyView(view: SessionView): void {
    this.view = view;
    if (view.dropped !== undefined) this.dropReports = view.dropped;
  }

  private async refresh(): Promise<void> {
    if (this.sessionId === null) return;
    this.view = await this.api.view(this.sessionId);
  }

  private async handleError(err: unknown): Promise<void> {
    if (err instanceof ApiError && err.status === 409) {
      this.banner = { kind: "conflict", text: "session changed, refreshed" };
      await this.refresh();
      return;
    }
    const detail = refutationDetail(err);
    if (detail !== null) {
      // the server verdict is authoritative: show it verbatim
      this.inlineErrors = detail;
      return;
    }
    if (err instanceof ApiError) {
      this.banner = { kind: "error", text: String(err.detail ?? err.message) };
      return;
    }
    this.banner = { kind: "error", text: String(err) };
  }

  private action(body: () => Promise<void>): Promise<void> {
    return this.enqueue(async () => {
      this.banner = null;
      try {
        await body();
      } catch (err) {
        await this.handleError(err);
      }
      this.emit();
    });
  }

  load(sessionId: string): Promise<void> {
    this.sessionId = sessionId;
    return this.action(async () => {
      this.view = await this.api.view(sessionId);
    });
  }

  create(body: { ontology: string; names: string[]; order?: string[] }): Promise<void> {
    return this.action(async () => {
      const created = await this.api.create(body);
      this.sessionId = created.sessionId;
      this.view = await this.api.view(created.sessionId);
    });
  }

  createFromSnapshot(snapshot: string): Promise<void> {
    return this.action(async () => {
      const created = await this.api.createFromSnapshot(snapshot);
      this.sessionId = created.sessionId;
      this.view = await this.api.view(created.sessionId);
    });
  }

  get id(): string | null {
    return this.sessionId;
  }

  answerYes(): Promise<void> {
    return this.action(async () => {
      const view = this.view;
      if (view?.question == null || this.sessionId === null) return;
      this.applyView(
        await this.api.answerYes(this.sessionId, view.question.id, view.revision),
      );
      this.draft = null;
      this.inlineErrors = null;
      this.dropReports = [];
    });
  }

  openCounterexampleEditor(): void {
    const attributes = this.view?.context.attributes ?? [];
    this.draft = { object: "", cells: emptyRow(attributes) };
    this.inlineErrors = null;
    this.emit();
  }

  closeCounterexampleEditor(): void {
    this.draft = null;
    this.inlineErrors = null;
    this.emit();
  }

  setObjectName(name: string): void {
    if (this.draft === null) return;
    this.draft.object = name;
    this.emit();
  }

  setCell(attribute: string, state: CellState): void {
    if (this.draft === null) return;
    this.draft.cells[attribute] = state;
    this.inlineErrors = null;
    this.emit();
  }

  /** Advisory gate for the submit button. */
  refutationStatus(): RefutationPreview {
    const question = this.view?.question;
    if (question == null || this.draft === null) {
      return { refutes: false, problems: [] };
    }
    const preview = refutationPreview(
      question.premise,
      question.conclusion,
      this.draft.cells,
    );
    if (this.draft.object.trim() === "") {
      return {
        refutes: false,
        problems: ["counterexample needs an object name", ...preview.problems],
      };
    }
    return preview;
  }

  submitCounterexample(): Promise<void> {
    return this.action(async () => {
      const view = this.view;
      const draft = this.draft;
      if (view?.question == null || draft === null || this.sessionId === null) return;
      const { present, absent } = rowToCounterexampleParts(draft.cells);
      this.applyView(
        await this.api.answerNo(this.sessionId, view.question.id, view.revision, {
          object: draft.object.trim(),
          present,
          absent,
        }),
      );
      this.draft = null;
      this.inlineErrors = null;
      this.dropReports = [];
    });
  }

  undo(eventIndex: number): Promise<void> {
    return this.action(async () => {
      const view = this.view;
      if (view === null || this.sessionId === null) return;
      this.dropReports = [];
      this.applyView(await this.api.undo(this.sessionId, eventIndex, view.revision));
      this.draft = null;
      this.inlineErrors = null;
    });
  }

  postpone(): Promise<void> {
    return this.action(async () => {
      const view = this.view;
      if (view === null || this.sessionId === null) return;
      this.applyView(await this.api.postpone(this.sessionId, view.revision));
      this.draft = null;
    });
  }

  pause(): Promise<void> {
    return this.action(async () => {
      const view = this.view;
      if (view === null || this.sessionId === null) return;
      const { snapshot } = await this.api.pause(this.sessionId, view.revision);
      this.lastSnapshot = snapshot;
      await this.refresh();
    });
  }

  resume(snapshot: string): Promise<void> {
    return this.action(async () => {
      if (this.sessionId === null) return;
      this.applyView(await this.api.resume(this.sessionId, snapshot));
      this.lastSnapshot = null;
    });
  }

  loadExport(): Promise<void> {
    return this.action(async () => {
      if (this.sessionId === null) return;
      this.exportData = await this.api.export(this.sessionId);
    });
  }
}
