/** Wire types mirroring the optimization server's JSON payloads. */

export interface CatalogEntry {
  index: number;
  name: string;
  kind: "continuous" | "binary";
  physical_min: number;
  physical_max: number;
  unit: string;
}

/** Physical rendering of one proposed design (booleans already resolved). */
export interface PhysicalDesign {
  ego_trajectory_length: number;
  ego_trajectory_alpha: number;
  ego_chevron_size: number;
  ego_chevron_distance: number;
  ego_path_length_in_map: number;
  other_trajectory_length: number;
  other_trajectory_alpha: number;
  other_chevron_size: number;
  other_chevron_distance: number;
  map_at_display: boolean;
  boundary_box: boolean;
  additional_info_at_display: boolean;
}

export interface DesignPayload {
  run_index: number;
  phase: string;
  proposal_kind: string;
  design: number[];
  physical: PhysicalDesign;
}

export interface SessionStart extends DesignPayload {
  session_id: string;
}

export interface SessionSummary {
  session_id: string;
  participant_label: string;
  condition: string;
  phase: string;
  complete: boolean;
  total_runs: number;
  runs_rated: number;
  aggregate_trace: number[];
  run_index?: number;
  design?: number[];
  physical?: PhysicalDesign;
}

export interface RatingsPayload {
  trust: number;
  understanding: number;
  mental_demand: number;
  perceived_safety: [number, number, number, number];
  acceptance_useful: number;
  acceptance_satisfying: number;
  aesthetics: number;
}

export interface SubmitResponse {
  complete: boolean;
  runs_rated: number;
  aggregate: number;
  run_index?: number;
  design?: number[];
  physical?: PhysicalDesign;
}

export interface ParetoEntry {
  run_index: number;
  design: number[];
  objectives: number[];
}

export interface ParetoResponse {
  session_id: string;
  entries: ParetoEntry[];
}
