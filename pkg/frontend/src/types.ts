/** Payload shapes for the documented service endpoints.
 *
 * Everything here mirrors what the service sends over the wire. The UI never
 * computes scores of its own; it formats what these payloads carry.
 */

export const LABELS = [
  "Outlier",
  "License",
  "Functional Suitability",
  "Compatibility",
  "Project's Maintenance",
] as const;

export type Label = (typeof LABELS)[number];

/** The four adoption criteria. Outlier is a bucket, not a criterion. */
export const CRITERIA: readonly Label[] = LABELS.slice(1);

export function isLabel(value: string): value is Label {
  return (LABELS as readonly string[]).includes(value);
}

export interface ProjectRow {
  id: string;
  repo_id: string;
  oss_domain: string;
  docs_url: string;
  stars: number;
  n_pages: number;
  n_sections: number;
}

export interface ProjectListing {
  projects: ProjectRow[];
}

export interface SectionRow {
  section_id: string;
  heading_path: string[];
  text: string;
  page_path: string;
  page_title: string;
  label: Label;
  sums: Record<string, number>;
  tie: boolean;
  margin: number;
}

export interface SectionListing {
  project_id: string;
  label: Label | null;
  sections: SectionRow[];
}

export interface HealthInfo {
  status: string;
  model_id: string;
  corpus_counts: Record<string, number>;
}

export type TermSource = "tfidf" | "llm";

export interface TechnicalTerm {
  term: string;
  source: TermSource;
  score: number;
  explanation: string;
  examples: string[];
  references: string[];
}

export interface PromptExchange {
  purpose: string;
  prompt: string;
  response: string;
  ok: boolean;
}

export interface Augmentation {
  paragraph: string;
  oss_domain: string;
  terms: TechnicalTerm[];
  prompt_log: PromptExchange[];
  degraded: boolean;
}
