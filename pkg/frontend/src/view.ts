// DOM builders. Everything rendered comes straight from a field of the API
// response; the view layer never synthesizes citations or scores.

import type { AnswerPayload } from "./api.js";
import type { HistoryEntry } from "./state.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderAnswer(payload: AnswerPayload): HTMLElement {
  const root = el("section", "answer-view");

  const badge = el("span", "mode-badge", payload.mode);
  root.appendChild(badge);
  if (payload.degraded) {
    root.appendChild(el("span", "degraded-badge", "degraded"));
  }
  root.appendChild(el("span", "latency", `${payload.latency_ms.toFixed(0)} ms`));
  root.appendChild(el("p", "answer-text", payload.answer));

  const sources = el("ol", "source-cards");
  for (const source of payload.cited_sources) {
    const card = el("li", "source-card");
    card.dataset.chunkId = source.chunk_id;
    card.appendChild(el("span", "source-pmid", `PMID ${source.pmid}`));
    card.appendChild(el("span", "source-section", source.section_title));
    card.appendChild(el("span", "source-score", source.score.toFixed(4)));
    card.appendChild(el("p", "source-snippet", source.text));
    sources.appendChild(card);
  }
  root.appendChild(sources);

  if (payload.mode !== "text_only" && payload.images.length > 0) {
    const gallery = el("div", "image-gallery");
    for (const image of payload.images) {
      const img = document.createElement("img");
      img.loading = "lazy";
      img.src = image.url;
      img.alt = image.image_id;
      gallery.appendChild(img);
    }
    root.appendChild(gallery);
  }
  return root;
}

export function renderError(message: string): HTMLElement {
  return el("div", "error-banner", message);
}

export function renderHistory(
  entries: HistoryEntry[],
  onRestore: (entry: HistoryEntry) => void,
): HTMLElement {
  const root = el("aside", "history");
  if (entries.length === 0) {
    root.appendChild(el("p", "history-empty", "No queries yet."));
    return root;
  }
  for (const entry of entries) {
    const card = el("button", "history-card");
    card.type = "button";
    card.appendChild(el("span", "history-question", entry.params.question));
    card.appendChild(
      el("span", "history-meta", `${entry.params.mode} / k=${entry.params.top_k}`),
    );
    card.addEventListener("click", () => onRestore(entry));
    root.appendChild(card);
  }
  return root;
}
