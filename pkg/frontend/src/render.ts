/** DOM builders for every pane. Pure view code: the numbers shown here come
 * straight from service payloads, formatted and nothing else.
 */

import type { ChecklistRow } from "./checklist.js";
import { LABELS, type Label, type ProjectRow, type SectionListing, type SectionRow } from "./types.js";

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  return node;
}

export interface SectionHandlers {
  onToggle(row: SectionRow): void;
  onAugment(row: SectionRow): void;
}

export function renderProjects(
  container: HTMLElement,
  projects: ProjectRow[],
  selectedId: string | null,
  onSelect: (project: ProjectRow) => void,
): void {
  container.textContent = "";
  const list = el("ul", "project-list");
  for (const project of projects) {
    const item = el("li");
    const button = el("button", "project");
    button.type = "button";
    button.dataset.projectId = project.id;
    if (project.id === selectedId) {
      button.classList.add("selected");
    }
    const name = el("span", "project-name");
    name.textContent = project.repo_id;
    const meta = el("span", "project-meta");
    meta.textContent = `${project.oss_domain} · ★ ${project.stars.toLocaleString()} · ${project.n_sections} sections`;
    button.append(name, meta);
    button.addEventListener("click", () => onSelect(project));
    item.append(button);
    list.append(item);
  }
  container.append(list);
}

/** Section listing grouped by predicted label, groups in canonical order. */
export function renderSections(
  container: HTMLElement,
  listing: SectionListing,
  openSectionId: string | null,
  handlers: SectionHandlers,
): void {
  container.textContent = "";
  if (listing.sections.length === 0) {
    const empty = el("p", "empty-state");
    empty.textContent = listing.label
      ? `No sections were labeled ${listing.label}.`
      : "This project has no sections.";
    container.append(empty);
    return;
  }

  const groups = new Map<Label, SectionRow[]>();
  for (const row of listing.sections) {
    const rows = groups.get(row.label);
    if (rows) {
      rows.push(row);
    } else {
      groups.set(row.label, [row]);
    }
  }

  for (const label of LABELS) {
    const rows = groups.get(label);
    if (!rows) {
      continue;
    }
    const group = el("section", "label-group");
    group.dataset.label = label;
    const heading = el("h3", "label-heading");
    heading.textContent = `${label} (${rows.length})`;
    group.append(heading);
    for (const row of rows) {
      group.append(sectionCard(row, row.section_id === openSectionId, handlers));
    }
    container.append(group);
  }
}

function sectionCard(row: SectionRow, open: boolean, handlers: SectionHandlers): HTMLElement {
  const card = el("article", "section-card");
  card.dataset.sectionId = row.section_id;
  if (open) {
    card.classList.add("open");
  }

  const header = el("button", "section-header");
  header.type = "button";
  const title = el("span", "section-title");
  title.textContent = row.heading_path.join(" › ") || row.page_title;
  header.append(title, confidenceBadge(row));
  header.addEventListener("click", () => handlers.onToggle(row));
  card.append(header);

  if (open) {
    const body = el("div", "section-body");
    const source = el("p", "section-source");
    source.textContent = `${row.page_title} — ${row.page_path}`;
    const text = el("p", "section-text");
    text.textContent = row.text;
    const explain = el("button", "augment-button");
    explain.type = "button";
    explain.textContent = "Explain terms";
    explain.addEventListener("click", () => handlers.onAugment(row));
    body.append(source, text, explain);
    card.append(body);
  }
  return card;
}

/** Confidence display: the service's summed-similarity margin, formatted. */
function confidenceBadge(row: SectionRow): HTMLElement {
  const badge = el("span", "confidence");
  badge.textContent = row.margin.toFixed(2);
  badge.title = Object.entries(row.sums)
    .map(([label, sum]) => `${label}: ${sum.toFixed(3)}`)
    .join("\n");
  if (row.tie) {
    const tie = el("span", "tie-flag");
    tie.textContent = "tie";
    tie.title = "another label scored the same; ordering broke the tie";
    badge.append(" ", tie);
  }
  return badge;
}

/** Inline failure notice with a retry button; the pane never goes blank. */
export function renderErrorBanner(
  container: HTMLElement,
  message: string,
  onRetry: () => void,
): void {
  container.textContent = "";
  const banner = el("div", "error-banner");
  banner.setAttribute("role", "alert");
  const text = el("span", "error-message");
  text.textContent = message;
  const retry = el("button", "retry-button");
  retry.type = "button";
  retry.textContent = "Retry";
  retry.addEventListener("click", onRetry);
  banner.append(text, retry);
  container.append(banner);
}

export interface ChecklistHandlers {
  onCycle(index: number): void;
  onNotes(index: number, notes: string): void;
  onRemove(index: number): void;
  onAdd(criterion: string): void;
}

export function renderChecklist(
  container: HTMLElement,
  rows: ChecklistRow[],
  handlers: ChecklistHandlers,
): void {
  container.textContent = "";
  const list = el("ul", "checklist");
  rows.forEach((row, index) => {
    const item = el("li", `checklist-row state-${row.state}`);
    item.dataset.criterion = row.criterion;

    const toggle = el("button", "state-toggle");
    toggle.type = "button";
    toggle.textContent = row.state;
    toggle.title = "click to cycle: unset, satisfied, unsatisfied";
    toggle.addEventListener("click", () => handlers.onCycle(index));

    const name = el("span", "criterion");
    name.textContent = row.criterion;

    item.append(toggle, name);
    if (!row.builtin) {
      const remove = el("button", "remove-row");
      remove.type = "button";
      remove.textContent = "×";
      remove.title = "remove this row";
      remove.addEventListener("click", () => handlers.onRemove(index));
      item.append(remove);
    }

    const notes = el("textarea", "notes");
    notes.rows = 1;
    notes.placeholder = "notes";
    notes.value = row.notes;
    notes.addEventListener("input", () => handlers.onNotes(index, notes.value));
    item.append(notes);
    list.append(item);
  });
  container.append(list);

  const form = el("form", "add-row");
  const input = el("input");
  input.type = "text";
  input.placeholder = "Add a criterion…";
  const add = el("button", "add-button");
  add.type = "submit";
  add.textContent = "Add";
  form.append(input, add);
  form.addEventListener("submit", (event) => {
    event.preventDefault();
    handlers.onAdd(input.value);
    input.value = "";
  });
  container.append(form);
}
