// Client-side session state. History is kept in memory only and ordered
// newest first; restoring an entry repopulates the form parameters.

import type { AnswerPayload, Mode, QueryParams } from "./api.js";

export interface HistoryEntry {
  params: QueryParams;
  answer: AnswerPayload;
}

export interface FormState {
  question: string;
  topK: number;
  mode: Mode;
  inFlight: boolean;
}

export const MODES: Mode[] = ["full", "no_fusion_concat", "text_only"];

export function defaultForm(): FormState {
  return { question: "", topK: 5, mode: "full", inFlight: false };
}

export function canSubmit(form: FormState): boolean {
  return form.question.trim().length > 0 && !form.inFlight;
}

export class Session {
  readonly history: HistoryEntry[] = [];

  record(params: QueryParams, answer: AnswerPayload): void {
    this.history.unshift({ params, answer });
  }
}
