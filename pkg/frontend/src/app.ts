// Wires the query form, answer view, error banner and history panel
// together. One query may be in flight at a time; the submit button stays
// disabled until the request resolves either way.

import { ApiError, submitQuery } from "./api.js";
import type { FetchLike, Mode, QueryParams } from "./api.js";
import { MODES, Session, canSubmit, defaultForm } from "./state.js";
import { renderAnswer, renderError, renderHistory } from "./view.js";

export function createApp(root: HTMLElement, fetchFn: FetchLike = fetch): void {
  const session = new Session();
  const form = defaultForm();

  root.innerHTML = `
    <form class="query-form">
      <input name="question" type="text" placeholder="Ask a question" />
      <select name="mode">
        ${MODES.map((m) => `<option value="${m}">${m}</option>`).join("")}
      </select>
      <input name="top_k" type="number" min="1" value="${form.topK}" />
      <button type="submit" disabled>Ask</button>
    </form>
    <div class="status-area"></div>
    <div class="answer-area"></div>
    <div class="history-area"></div>
  `;

  const formEl = root.querySelector<HTMLFormElement>(".query-form")!;
  const questionEl = formEl.querySelector<HTMLInputElement>("[name=question]")!;
  const modeEl = formEl.querySelector<HTMLSelectElement>("[name=mode]")!;
  const topKEl = formEl.querySelector<HTMLInputElement>("[name=top_k]")!;
  const submitEl = formEl.querySelector<HTMLButtonElement>("button")!;
  const statusArea = root.querySelector<HTMLDivElement>(".status-area")!;
  const answerArea = root.querySelector<HTMLDivElement>(".answer-area")!;
  const historyArea = root.querySelector<HTMLDivElement>(".history-area")!;

  function syncForm(): void {
    form.question = questionEl.value;
    form.mode = modeEl.value as Mode;
    form.topK = Number(topKEl.value) || 1;
    submitEl.disabled = !canSubmit(form);
  }

  function redrawHistory(): void {
    historyArea.replaceChildren(
      renderHistory(session.history, (entry) => {
        questionEl.value = entry.params.question;
        modeEl.value = entry.params.mode;
        topKEl.value = String(entry.params.top_k);
        syncForm();
      }),
    );
  }

  questionEl.addEventListener("input", syncForm);
  modeEl.addEventListener("change", syncForm);
  topKEl.addEventListener("input", syncForm);

  formEl.addEventListener("submit", (event) => {
    event.preventDefault();
    syncForm();
    if (!canSubmit(form)) return;
    const params: QueryParams = {
      question: form.question.trim(),
      top_k: form.topK,
      mode: form.mode,
    };
    form.inFlight = true;
    submitEl.disabled = true;
    statusArea.replaceChildren();

    void submitQuery(params, fetchFn)
      .then((answer) => {
        answerArea.replaceChildren(renderAnswer(answer));
        session.record(params, answer);
        redrawHistory();
      })
      .catch((err: unknown) => {
        const message =
          err instanceof ApiError
            ? `${err.code}: ${err.message}`
            : `unexpected error: ${String(err)}`;
        statusArea.replaceChildren(renderError(message));
      })
      .finally(() => {
        form.inFlight = false;
        syncForm();
      });
  });

  syncForm();
  redrawHistory();
}
