/** Application wiring: fetch through the api client, render into the three
 * panes, persist the checklist. No score math happens here.
 */

import { api, ApiError, setApiBase } from "./api.js";
import { AugmentRequester, renderAugmentation, renderAugmentError, renderAugmentPending } from "./augment.js";
import { addRow, cycleState, loadChecklist, removeRow, saveChecklist, type ChecklistRow } from "./checklist.js";
import { renderChecklist, renderErrorBanner, renderProjects, renderSections } from "./render.js";
import { initialState, selectProject, setLabelFilter, showAugmentation, toggleSection, type ViewState } from "./state.js";
import { LABELS, type ProjectRow, type SectionRow } from "./types.js";

function byId(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) {
    throw new Error(`missing #${id} in index.html`);
  }
  return node;
}

function boot(): void {
  // a static host can point the UI at a service on another origin
  const params = new URLSearchParams(window.location.search);
  setApiBase(params.get("api") ?? "");

  const projectsPane = byId("projects");
  const sectionsPane = byId("sections");
  const augmentPane = byId("augment-panel");
  const checklistPane = byId("checklist");
  const filter = byId("label-filter") as HTMLSelectElement;

  let state: ViewState = initialState();
  let projects: ProjectRow[] = [];
  let current: ProjectRow | null = null;
  let rows: ChecklistRow[] = [];

  const requester = new AugmentRequester((paragraph, domain) => api.augment(paragraph, domain));

  const allOption = document.createElement("option");
  allOption.value = "";
  allOption.textContent = "All labels";
  filter.append(allOption);
  for (const label of LABELS) {
    const option = document.createElement("option");
    option.value = label;
    option.textContent = label;
    filter.append(option);
  }

  function persistChecklist(): void {
    if (state.projectId) {
      saveChecklist(window.localStorage, state.projectId, rows);
    }
  }

  function redrawChecklist(): void {
    renderChecklist(checklistPane, rows, {
      onCycle(index) {
        rows[index].state = cycleState(rows[index].state);
        persistChecklist();
        redrawChecklist();
      },
      onNotes(index, notes) {
        rows[index].notes = notes;
        persistChecklist(); // no redraw, the textarea keeps focus
      },
      onRemove(index) {
        rows = removeRow(rows, index);
        persistChecklist();
        redrawChecklist();
      },
      onAdd(criterion) {
        rows = addRow(rows, criterion);
        persistChecklist();
        redrawChecklist();
      },
    });
  }

  function requestAugmentation(row: SectionRow): void {
    if (!current) {
      return;
    }
    renderAugmentPending(augmentPane);
    requester
      .request(row.text, current.oss_domain)
      .then((aug) => {
        if (aug === null) {
          return; // superseded by a newer click
        }
        state = showAugmentation(state, aug);
        renderAugmentation(augmentPane, aug);
      })
      .catch((err) => {
        if (err instanceof ApiError && err.status === 400) {
          renderAugmentError(augmentPane, err.message);
        } else {
          renderErrorBanner(augmentPane, "DocMentor request failed.", () => requestAugmentation(row));
        }
      });
  }

  function loadSections(): void {
    if (!state.projectId) {
      return;
    }
    const projectId = state.projectId;
    api
      .sections(projectId, state.labelFilter ?? undefined)
      .then((listing) => {
        if (state.projectId !== projectId) {
          return; // the user moved on while we were loading
        }
        renderSections(sectionsPane, listing, state.openSectionId, {
          onToggle(row) {
            state = toggleSection(state, row.section_id);
            augmentPane.textContent = "";
            loadSections();
          },
          onAugment(row) {
            requestAugmentation(row);
          },
        });
      })
      .catch(() => {
        renderErrorBanner(sectionsPane, "Could not load sections.", loadSections);
      });
  }

  function openProject(project: ProjectRow): void {
    current = project;
    state = selectProject(project.id);
    filter.value = "";
    rows = loadChecklist(window.localStorage, project.id);
    augmentPane.textContent = "";
    renderProjects(projectsPane, projects, project.id, openProject);
    redrawChecklist();
    loadSections();
  }

  function loadProjects(): void {
    api
      .projects()
      .then((listing) => {
        projects = listing.projects;
        renderProjects(projectsPane, projects, state.projectId, openProject);
      })
      .catch(() => {
        renderErrorBanner(projectsPane, "Could not load projects.", loadProjects);
      });
  }

  filter.addEventListener("change", () => {
    state = setLabelFilter(state, filter.value === "" ? null : filter.value);
    loadSections();
  });

  loadProjects();
}

document.addEventListener("DOMContentLoaded", boot);
