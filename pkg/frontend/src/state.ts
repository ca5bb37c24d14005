/** Client-side view state: what the user is looking at, nothing more.
 *
 * The service owns every score and label. Transitions return fresh state so
 * callers re-render from one place.
 */

import { isLabel, type Augmentation, type Label } from "./types.js";

export interface ViewState {
  projectId: string | null;
  /** null means "all labels". Never holds an unknown label string. */
  labelFilter: Label | null;
  openSectionId: string | null;
  augmentation: Augmentation | null;
}

export function initialState(): ViewState {
  return {
    projectId: null,
    labelFilter: null,
    openSectionId: null,
    augmentation: null,
  };
}

/** Switching projects drops all section-scoped state. */
export function selectProject(projectId: string): ViewState {
  return { ...initialState(), projectId };
}

export function setLabelFilter(state: ViewState, label: string | null): ViewState {
  if (label !== null && !isLabel(label)) {
    throw new Error(`not a known label: ${label}`);
  }
  return { ...state, labelFilter: label };
}

/** Clicking an open section closes it; opening another drops the old panel. */
export function toggleSection(state: ViewState, sectionId: string): ViewState {
  if (state.openSectionId === sectionId) {
    return { ...state, openSectionId: null, augmentation: null };
  }
  return { ...state, openSectionId: sectionId, augmentation: null };
}

export function showAugmentation(state: ViewState, augmentation: Augmentation): ViewState {
  return { ...state, augmentation };
}
