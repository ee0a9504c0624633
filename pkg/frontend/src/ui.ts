import type { HistoryEvent } from "./api.js";
import type { SessionStore } from "./store.js";
import type { CellState } from "./refute.js";

const CELL_STATES: readonly CellState[] = ["+", "-", "?"];

export interface MountOptions {
  /** called with the snapshot text after a successful pause (e.g. to
   * trigger a file download); tests capture it instead */
  onSnapshot?: (snapshot: string) => void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  doc: Document,
  tag: K,
  attrs: Record<string, string> = {},
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = doc.createElement(tag);
  for (const [name, value] of Object.entries(attrs)) node.setAttribute(name, value);
  if (text !== undefined) node.textContent = text;
  return node;
}

function eventLabel(event: HistoryEvent): string {
  if (event.kind === "yes") return `accepted ${event.implicationText}`;
  if (event.kind === "no")
    return `rejected ${event.implicationText} with counterexample ${event.object}`;
  return `question order changed to ${event.order.join(", ")}`;
}

/** Render the whole console into `root` and re-render on store changes. */
export function mountApp(
  root: HTMLElement,
  store: SessionStore,
  options: MountOptions = {},
): () => void {
  const doc = root.ownerDocument;

  const render = (): void => {
    root.textContent = "";
    const view = store.view;
    if (view === null) {
      root.appendChild(el(doc, "p", { "data-testid": "loading" }, "loading session..."));
      return;
    }

    const header = el(doc, "header", {});
    header.appendChild(el(doc, "span", { "data-testid": "status" }, view.status));
    header.appendChild(
      el(doc, "span", { "data-testid": "revision" }, `revision ${view.revision}`),
    );
    root.appendChild(header);

    if (store.banner !== null) {
      root.appendChild(
        el(
          doc,
          "div",
          { "data-testid": "banner", class: `banner banner-${store.banner.kind}` },
          store.banner.text,
        ),
      );
    }

    if (view.status === "running" && view.question !== null) {
      root.appendChild(renderQuestionCard());
    }
    if (view.status === "paused") {
      root.appendChild(
        el(doc, "p", { "data-testid": "paused-note" }, "session is paused"),
      );
    }
    root.appendChild(renderControls());
    if (store.lastSnapshot !== null) root.appendChild(renderSnapshot());
    root.appendChild(renderResume());
    if (store.dropReports.length > 0) root.appendChild(renderDropReports());
    root.appendChild(renderHistory());
    root.appendChild(renderContextTable());
    if (store.exportData !== null) root.appendChild(renderExport());
  };

  const renderQuestionCard = (): HTMLElement => {
    const view = store.view!;
    const question = view.question!;
    const card = el(doc, "section", { "data-testid": "question-card" });
    card.appendChild(
      el(
        doc,
        "h2",
        { "data-testid": "question-implication" },
        `Does ${question.implicationText} hold?`,
      ),
    );
    card.appendChild(
      el(doc, "p", { "data-testid": "question-gci" }, question.gciText),
    );

    const yes = el(doc, "button", { "data-testid": "answer-yes" }, "Yes");
    yes.addEventListener("click", () => void store.answerYes());
    card.appendChild(yes);

    const no = el(doc, "button", { "data-testid": "answer-no" }, "No...");
    no.addEventListener("click", () => store.openCounterexampleEditor());
    card.appendChild(no);

    if (store.draft !== null) card.appendChild(renderEditor());
    return card;
  };

  const renderEditor = (): HTMLElement => {
    const view = store.view!;
    const draft = store.draft!;
    const editor = el(doc, "form", { "data-testid": "counterexample-editor" });
    editor.addEventListener("submit", (e) => e.preventDefault());

    const name = el(doc, "input", {
      "data-testid": "ce-object",
      placeholder: "counterexample name",
      value: draft.object,
    });
    name.value = draft.object;
    name.addEventListener("change", () => store.setObjectName(name.value));
    editor.appendChild(name);

    for (const attr of view.context.attributes) {
      const group = el(doc, "fieldset", { "data-testid": `cell-${attr}` });
      group.appendChild(el(doc, "legend", {}, attr));
      for (const state of CELL_STATES) {
        const selected = draft.cells[attr] === state;
        const toggle = el(
          doc,
          "button",
          {
            type: "button",
            "data-testid": `cell-${attr}-${state}`,
            "aria-pressed": selected ? "true" : "false",
          },
          state,
        );
        toggle.addEventListener("click", () => store.setCell(attr, state));
        group.appendChild(toggle);
      }
      editor.appendChild(group);
    }

    const preview = store.refutationStatus();
    const problems = el(doc, "ul", { "data-testid": "refutation-problems" });
    for (const problem of preview.problems) {
      problems.appendChild(el(doc, "li", {}, problem));
    }
    editor.appendChild(problems);

    if (store.inlineErrors !== null) {
      const server = el(doc, "div", { "data-testid": "server-verdict" });
      server.appendChild(el(doc, "p", {}, store.inlineErrors.message));
      for (const attr of store.inlineErrors.attributes) {
        server.appendChild(
          el(doc, "p", { "data-testid": `server-verdict-${attr}` }, attr),
        );
      }
      editor.appendChild(server);
    }

    const submit = el(
      doc,
      "button",
      { type: "button", "data-testid": "ce-submit" },
      "Submit counterexample",
    );
    if (!preview.refutes) submit.setAttribute("disabled", "");
    submit.addEventListener("click", () => {
      if (store.refutationStatus().refutes) void store.submitCounterexample();
    });
    editor.appendChild(submit);

    const cancel = el(
      doc,
      "button",
      { type: "button", "data-testid": "ce-cancel" },
      "Cancel",
    );
    cancel.addEventListener("click", () => store.closeCounterexampleEditor());
    editor.appendChild(cancel);
    return editor;
  };

  const renderControls = (): HTMLElement => {
    const view = store.view!;
    const controls = el(doc, "section", { "data-testid": "controls" });

    if (view.status === "running") {
      const postpone = el(doc, "button", { "data-testid": "postpone" }, "Postpone");
      postpone.addEventListener("click", () => void store.postpone());
      controls.appendChild(postpone);

      const pauseButton = el(doc, "button", { "data-testid": "pause" }, "Pause");
      pauseButton.addEventListener("click", () => {
        void store.pause().then(() => {
          if (store.lastSnapshot !== null) options.onSnapshot?.(store.lastSnapshot);
        });
      });
      controls.appendChild(pauseButton);
    }

    const exportButton = el(doc, "button", { "data-testid": "export" }, "Export");
    exportButton.addEventListener("click", () => void store.loadExport());
    controls.appendChild(exportButton);
    return controls;
  };

  const renderSnapshot = (): HTMLElement => {
    const section = el(doc, "section", { "data-testid": "snapshot" });
    section.appendChild(el(doc, "p", {}, "snapshot ready; keep it to resume later"));
    section.appendChild(
      el(doc, "pre", { "data-testid": "snapshot-text" }, store.lastSnapshot ?? ""),
    );
    return section;
  };

  const renderResume = (): HTMLElement => {
    const view = store.view!;
    const section = el(doc, "section", { "data-testid": "resume-section" });
    if (view.status !== "paused") {
      section.setAttribute("hidden", "");
      return section;
    }
    const input = el(doc, "textarea", {
      "data-testid": "resume-input",
      placeholder: "paste a session snapshot",
    });
    section.appendChild(input);
    const button = el(doc, "button", { "data-testid": "resume" }, "Resume");
    button.addEventListener("click", () => void store.resume(input.value));
    section.appendChild(button);
    return section;
  };

  const renderDropReports = (): HTMLElement => {
    const section = el(doc, "section", { "data-testid": "drop-reports" });
    section.appendChild(el(doc, "h3", {}, "dropped by rewind"));
    const list = el(doc, "ul", {});
    for (const report of store.dropReports) {
      list.appendChild(
        el(
          doc,
          "li",
          { "data-testid": `drop-report-${report.index}` },
          `#${report.index} (${report.kind}): ${report.reason}`,
        ),
      );
    }
    section.appendChild(list);
    return section;
  };

  const renderHistory = (): HTMLElement => {
    const view = store.view!;
    const section = el(doc, "section", { "data-testid": "history" });
    section.appendChild(el(doc, "h3", {}, "answers so far"));
    const list = el(doc, "ol", {});
    for (const event of view.history) {
      const item = el(doc, "li", { "data-testid": `history-${event.index}` });
      item.appendChild(el(doc, "span", {}, eventLabel(event)));
      const undoButton = el(
        doc,
        "button",
        { "data-testid": `undo-${event.index}` },
        "Undo from here",
      );
      undoButton.addEventListener("click", () => void store.undo(event.index));
      item.appendChild(undoButton);
      list.appendChild(item);
    }
    section.appendChild(list);
    return section;
  };

  const renderContextTable = (): HTMLElement => {
    const view = store.view!;
    const section = el(doc, "section", {});
    const table = el(doc, "table", { "data-testid": "context-table" });
    const head = el(doc, "tr", {});
    head.appendChild(el(doc, "th", {}, "object"));
    for (const attr of view.context.attributes) head.appendChild(el(doc, "th", {}, attr));
    table.appendChild(head);
    for (const row of view.context.rows) {
      const tr = el(doc, "tr", { "data-testid": `context-row-${row.object}` });
      tr.appendChild(el(doc, "td", {}, row.object));
      for (const cell of row.cells) tr.appendChild(el(doc, "td", {}, cell));
      table.appendChild(tr);
    }
    section.appendChild(table);
    return section;
  };

  const renderExport = (): HTMLElement => {
    const data = store.exportData!;
    const section = el(doc, "section", { "data-testid": "export-view" });
    section.appendChild(el(doc, "h3", {}, "completed ontology"));
    section.appendChild(el(doc, "pre", { "data-testid": "export-ontology" }, data.ontology));
    section.appendChild(el(doc, "h3", {}, "final context"));
    section.appendChild(el(doc, "pre", { "data-testid": "export-context" }, data.context));
    const copy = el(doc, "button", { "data-testid": "export-copy" }, "Copy ontology");
    copy.addEventListener("click", () => {
      void root.ownerDocument.defaultView?.navigator.clipboard?.writeText(data.ontology);
    });
    section.appendChild(copy);
    return section;
  };

  const unsubscribe = store.subscribe(render);
  render();
  return unsubscribe;
}
