// Payload shapes of the /api/v1 review service.

export type SmellKind =
  | 'SubjectiveLanguage'
  | 'AmbiguousAdverbsAdjectives'
  | 'Loopholes'
  | 'NonVerifiableTerms'
  | 'Superlatives'
  | 'Comparatives'
  | 'NegativeStatements'
  | 'VaguePronouns';

export const ALL_SMELLS: SmellKind[] = [
  'SubjectiveLanguage',
  'AmbiguousAdverbsAdjectives',
  'Loopholes',
  'NonVerifiableTerms',
  'Superlatives',
  'Comparatives',
  'NegativeStatements',
  'VaguePronouns',
];

export interface ReviewRecord {
  finding_id: string;
  status: string;
  custom: boolean;
  comment: string | null;
  reviewer: string | null;
  updated_at: string;
}

export interface Finding {
  finding_id: string;
  smell: SmellKind;
  artifact_id: string;
  item_id: string;
  token_span: [number, number];
  char_range: [number, number];
  matched_text: string;
  message: string;
  improvement_hint: string;
  suppressed_by: string | null;
  review?: ReviewRecord | null;
}

export interface Item {
  artifact_id: string;
  item_id: string;
  text: string;
  char_range: [number, number];
  kind: string;
  findings: Finding[];
}

export interface ArtifactItems {
  artifact_id: string;
  items: Item[];
}

export interface ArtifactMetrics {
  artifact_id: string;
  folder_path: string[];
  word_count: number;
  findings_total: number;
  per_smell: Partial<Record<SmellKind, number>>;
  density_total: number;
  per_smell_density: Partial<Record<SmellKind, number>>;
  suppressed_total: number;
}

export interface TreemapNode {
  name: string;
  artifact_id: string | null;
  word_count: number;
  findings_total: number;
  per_smell: Partial<Record<SmellKind, number>>;
  density: number;
  children: TreemapNode[];
}

export interface RunHeader {
  run_id: string;
  created_at: string;
  artifact_count: number;
  finding_count: number;
}

export interface FindingDetail {
  finding: Finding;
  review: ReviewRecord | null;
  improvement_hint: string;
}
