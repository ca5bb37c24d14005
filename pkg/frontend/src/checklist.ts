/** Adoption checklist: tri-state rows persisted per project in localStorage.
 *
 * The four criteria are always present; readers add free-form rows for
 * anything project-specific. Clearing browser storage resets the lot.
 */

import { CRITERIA } from "./types.js";

export type RowState = "unset" | "satisfied" | "unsatisfied";

const ROW_STATES: readonly RowState[] = ["unset", "satisfied", "unsatisfied"];

export interface ChecklistRow {
  criterion: string;
  state: RowState;
  notes: string;
  builtin: boolean;
}

const KEY_PREFIX = "docadopt.checklist.v1.";

export function defaultRows(): ChecklistRow[] {
  return CRITERIA.map((criterion) => ({
    criterion,
    state: "unset" as RowState,
    notes: "",
    builtin: true,
  }));
}

export function cycleState(state: RowState): RowState {
  const next = ROW_STATES[(ROW_STATES.indexOf(state) + 1) % ROW_STATES.length];
  return next;
}

export function loadChecklist(storage: Storage, projectId: string): ChecklistRow[] {
  const raw = storage.getItem(KEY_PREFIX + projectId);
  if (raw === null) {
    return defaultRows();
  }
  try {
    return sanitize(JSON.parse(raw));
  } catch {
    return defaultRows(); // corrupt entry: start over rather than crash
  }
}

export function saveChecklist(storage: Storage, projectId: string, rows: ChecklistRow[]): void {
  storage.setItem(KEY_PREFIX + projectId, JSON.stringify(rows));
}

export function addRow(rows: ChecklistRow[], criterion: string): ChecklistRow[] {
  const name = criterion.trim();
  if (!name) {
    return rows;
  }
  return [...rows, { criterion: name, state: "unset", notes: "", builtin: false }];
}

/** Free-form rows can go; the built-in criteria cannot. */
export function removeRow(rows: ChecklistRow[], index: number): ChecklistRow[] {
  const row = rows[index];
  if (row === undefined || row.builtin) {
    return rows;
  }
  return rows.filter((_, i) => i !== index);
}

/** Rebuild rows from a stored blob, tolerating older or mangled shapes.
 *
 * Starts from the builtin defaults and overlays whatever stored rows still
 * make sense, so the four criteria survive any storage content.
 */
function sanitize(parsed: unknown): ChecklistRow[] {
  const rows = defaultRows();
  if (!Array.isArray(parsed)) {
    return rows;
  }
  for (const item of parsed) {
    if (typeof item !== "object" || item === null) {
      continue;
    }
    const { criterion, state, notes } = item as Record<string, unknown>;
    if (typeof criterion !== "string" || !ROW_STATES.includes(state as RowState)) {
      continue;
    }
    const clean = {
      state: state as RowState,
      notes: typeof notes === "string" ? notes : "",
    };
    const builtin = rows.find((r) => r.builtin && r.criterion === criterion);
    if (builtin) {
      Object.assign(builtin, clean);
    } else {
      rows.push({ criterion, builtin: false, ...clean });
    }
  }
  return rows;
}
