/** Augmentation panel: DocMentor output for one paragraph at a time. */

import type { Augmentation } from "./types.js";

export function renderAugmentation(panel: HTMLElement, aug: Augmentation): void {
  panel.textContent = "";

  if (aug.degraded) {
    const notice = document.createElement("p");
    notice.className = "degraded-notice";
    notice.setAttribute("role", "status");
    notice.textContent =
      "Language model unavailable: showing index terms only, without explanations or additional terms.";
    panel.append(notice);
  }

  if (aug.terms.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "No technical terms detected.";
    panel.append(empty);
    return;
  }

  const list = document.createElement("ul");
  list.className = "term-list";
  for (const term of aug.terms) {
    list.append(termItem(term));
  }
  panel.append(list);
}

function termItem(term: Augmentation["terms"][number]): HTMLElement {
  const item = document.createElement("li");
  item.className = `term term-${term.source}`;
  item.dataset.term = term.term;

  const head = document.createElement("div");
  head.className = "term-head";
  const name = document.createElement("strong");
  name.className = "term-name";
  name.textContent = term.term;
  const badge = document.createElement("span");
  badge.className = `badge badge-${term.source}`;
  badge.textContent = term.source === "llm" ? "LLM" : "index";
  head.append(name, badge);
  if (term.source === "tfidf") {
    // llm terms carry no index score, so there is nothing to show for them
    const score = document.createElement("span");
    score.className = "term-score";
    score.textContent = term.score.toFixed(3);
    head.append(score);
  }
  item.append(head);

  if (term.explanation) {
    const explanation = document.createElement("p");
    explanation.className = "term-explanation";
    explanation.textContent = term.explanation;
    item.append(explanation);
  }
  for (const example of term.examples) {
    const line = document.createElement("p");
    line.className = "term-example";
    line.textContent = example;
    item.append(line);
  }
  for (const reference of term.references) {
    const line = document.createElement("p");
    line.className = "term-reference";
    line.textContent = reference;
    item.append(line);
  }
  return item;
}

/** Inline message for a rejected request (bad paragraph, unknown domain). */
export function renderAugmentError(panel: HTMLElement, message: string): void {
  panel.textContent = "";
  const error = document.createElement("p");
  error.className = "validation-error";
  error.setAttribute("role", "alert");
  error.textContent = message;
  panel.append(error);
}

export function renderAugmentPending(panel: HTMLElement): void {
  panel.textContent = "";
  const pending = document.createElement("p");
  pending.className = "pending";
  pending.textContent = "Asking DocMentor…";
  panel.append(pending);
}

/** Keeps at most one augmentation in flight: a newer request supersedes any
 * pending one, whose result (or failure) is then dropped on arrival.
 */
export class AugmentRequester {
  private ticket = 0;

  constructor(private readonly run: (paragraph: string, domain: string) => Promise<Augmentation>) {}

  /** Resolves null when a newer request superseded this one. */
  async request(paragraph: string, domain: string): Promise<Augmentation | null> {
    const ticket = ++this.ticket;
    try {
      const aug = await this.run(paragraph, domain);
      return ticket === this.ticket ? aug : null;
    } catch (err) {
      if (ticket !== this.ticket) {
        return null; // a stale failure is not worth reporting
      }
      throw err;
    }
  }
}
