import { SessionApi } from "./api.js";
import { SessionStore } from "./store.js";
import { mountApp } from "./ui.js";

function apiBase(): string {
  const param = new URLSearchParams(window.location.search).get("api");
  return param ?? "";
}

function sessionIdFromHash(): string | null {
  const match = window.location.hash.match(/session=([0-9a-f]+)/);
  return match?.[1] ?? null;
}

function downloadSnapshot(snapshot: string): void {
  const blob = new Blob([snapshot], { type: "text/plain" });
  const url = URL.createObjectURL(blob);
  const anchor = document.createElement("a");
  anchor.href = url;
  anchor.download = "session-snapshot.txt";
  anchor.click();
  URL.revokeObjectURL(url);
}

function showCreateForm(root: HTMLElement, store: SessionStore): void {
  root.textContent = "";
  const form = document.createElement("form");
  form.innerHTML = `
    <h2>start a completion session</h2>
    <label>ontology <textarea name="ontology" rows="12"></textarea></label>
    <label>attribute names (comma separated) <input name="names"></label>
    <label>or paste a snapshot <textarea name="snapshot" rows="4"></textarea></label>
    <button type="submit">create</button>
  `;
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    const data = new FormData(form);
    const snapshot = String(data.get("snapshot") ?? "").trim();
    const done = snapshot
      ? store.createFromSnapshot(snapshot)
      : store.create({
          ontology: String(data.get("ontology") ?? ""),
          names: String(data.get("names") ?? "")
            .split(/[,\s]+/)
            .filter(Boolean),
        });
    void done.then(() => {
      if (store.id !== null) {
        window.location.hash = `session=${store.id}`;
        boot();
      }
    });
  });
  root.appendChild(form);
}

function boot(): void {
  const root = document.getElementById("app");
  if (root === null) return;
  const api = new SessionApi(apiBase());
  const store = new SessionStore(api);
  const sessionId = sessionIdFromHash();
  if (sessionId === null) {
    showCreateForm(root, store);
    return;
  }
  mountApp(root, store, { onSnapshot: downloadSnapshot });
  void store.load(sessionId);
}

boot();
