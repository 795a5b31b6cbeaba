/** Payload shapes of the trust-lattice service, mirrored one-to-one. */

export const FOUNDATION_NAMES = [
  "care",
  "fairness_equity",
  "fairness_proportionality",
  "liberty",
  "loyalty",
  "authority",
  "purity",
] as const;

export type FoundationName = (typeof FOUNDATION_NAMES)[number];
export type FoundationVector = Record<FoundationName, number>;

export interface ClaimNode {
  id: string;
  text: string;
  topics: string[];
  truth_maker_kind: string | null;
  proxy_kind: string | null;
  evidence_kind: string;
  footprint: FoundationVector | null;
  mutually_exclusive_with: string[];
}

export interface LatticeEdge {
  id: string;
  from: string;
  to: string;
  kind: "supports" | "attacks" | "evidence_for" | "sourced_from";
  declared_weight: number;
}

export interface LatticeAnchor {
  node_id: string;
  kind: "belief" | "authority" | "pre_trusted" | "evidence_exhausted" | "resource_exhausted";
  source_id: string | null;
  base_strength: number | null;
}

export interface Lattice {
  id: string;
  target_claim_id: string;
  nodes: ClaimNode[];
  edges: LatticeEdge[];
  anchors: LatticeAnchor[];
  disabled_edges: string[];
  disabled_anchors: string[];
}

export interface NodeTrace {
  support: number;
  attack: number;
  edge_weights: Record<string, number>;
  anchor: string | null;
}

export type Verdict = "accepted" | "rejected";

export interface Evaluation {
  scores: Record<string, number>;
  verdicts: Record<string, Verdict>;
  trace: Record<string, NodeTrace>;
}

export interface LatticePayload {
  lattice: Lattice;
  evaluation: Evaluation;
  profile: string;
  policy: string;
}

export interface LatticeSummary {
  state_id: string;
  lattice_id: string;
  target_claim_id: string;
  node_count: number;
  profile: string;
  policy: string;
}

export interface WhatIfPayload {
  lattice_id: string;
  evaluation: Evaluation;
}

export interface Nudge {
  kind: string;
  severity: number;
  mevir_diagnosis: string;
  message: string;
  subject_ids: string[];
  recommend_topic: string | null;
}

export interface NudgesPayload {
  session_id: string;
  nudges: Nudge[];
  insularity?: number;
}

export interface RecommendPayload {
  topic: string;
  recommendations: string[];
}

export interface FootprintPayload {
  vector: FoundationVector;
  intensity: number;
  matched_count: number;
}

export interface SessionEventBody {
  kind: "consulted" | "committed";
  step: number;
  claim_id: string;
  source_id?: string;
  supports_current_stance?: boolean;
  verdict?: string;
}

/** Overrides accepted by POST /api/lattices/{id}/evaluate. */
export interface WhatIfOverrides {
  foundation_weights?: Partial<FoundationVector>;
  source_trust?: Record<string, number>;
  tau?: number;
  lambda?: number;
  prior?: number;
  uncommitted?: number;
  ingest_threshold?: number;
}

export interface Envelope<T> {
  engine_version: string;
  bundle_hash: string;
  result?: T;
  error?: { message: string };
}
