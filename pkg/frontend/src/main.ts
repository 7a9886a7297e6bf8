// Page wiring: render the controller state into the static layout and bind
// form actions. The view is rebuilt from state on every change.

import { ApiClient } from "./api.js";
import { SessionController, ViewState, canRerank, rerankHint } from "./controller.js";

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderResults(state: ViewState): string {
  if (state.sessionId === null) {
    return '<p class="hint">Enter goals above to start a session.</p>';
  }
  if (state.results.length === 0) {
    return '<p class="hint">No objects match the current query.</p>';
  }
  const rows = state.results
    .map((r, i) => {
      const checked = state.pending.includes(r.object_id) ? " checked" : "";
      return (
        `<tr><td>${i + 1}</td>` +
        `<td><label><input type="checkbox" data-object="${escapeHtml(r.object_id)}"${checked}> ` +
        `${escapeHtml(r.object_id)}</label></td>` +
        `<td class="num">${r.score.toFixed(6)}</td></tr>`
      );
    })
    .join("");
  return (
    '<table><thead><tr><th>#</th><th>object (mark pertinent)</th><th>score</th></tr></thead>' +
    `<tbody>${rows}</tbody></table>`
  );
}

export function renderRounds(state: ViewState): string {
  if (state.rounds.length === 0) {
    return '<p class="hint">No feedback rounds yet.</p>';
  }
  return state.rounds
    .map((round) => {
      const added = round.addedGoals
        .map((g) => `<li>${escapeHtml(g.goal)} <span class="num">${g.weight.toFixed(4)}</span></li>`)
        .join("");
      return (
        `<div class="round"><h3>Round ${round.iteration} (${round.method.toUpperCase()})</h3>` +
        `<p>original: ${round.originalGoals.map(escapeHtml).join(", ")}</p>` +
        `<ul class="added">${added || "<li>(no goals added)</li>"}</ul></div>`
      );
    })
    .join("");
}

function render(state: ViewState): void {
  el("results").innerHTML = renderResults(state);
  el("history").innerHTML = renderRounds(state);

  const banner = el("error-banner");
  banner.textContent = state.error ?? "";
  banner.style.display = state.error ? "block" : "none";

  const judged = el("judged");
  judged.textContent = state.judged.length
    ? `judged pertinent: ${state.judged.join(", ")}`
    : "";

  const button = el<HTMLButtonElement>("rerank");
  button.disabled = state.busy || !canRerank(state);
  el("rerank-hint").textContent = rerankHint(state) ?? "";
}

export function mount(): void {
  const api = new ApiClient("");
  const controller = new SessionController(api, render);

  el<HTMLFormElement>("query-form").addEventListener("submit", (ev) => {
    ev.preventDefault();
    void controller.start(el<HTMLInputElement>("goals").value);
  });

  el("results").addEventListener("change", (ev) => {
    const target = ev.target as HTMLInputElement;
    const objectId = target.dataset.object;
    if (objectId) controller.toggle(objectId);
  });

  el<HTMLSelectElement>("method").addEventListener("change", (ev) => {
    controller.setMethod((ev.target as HTMLSelectElement).value as "prf" | "ppf");
  });

  el<HTMLInputElement>("k").addEventListener("change", (ev) => {
    controller.setK(Number((ev.target as HTMLInputElement).value));
  });

  el("rerank").addEventListener("click", () => {
    void controller.rerank();
  });

  render(controller.state);
}

if (typeof document !== "undefined" && document.getElementById("query-form")) {
  mount();
}
