// Shared types: cellulation file shapes and service API payloads.

export type EdgeClass = 'interior' | 'closed' | 'open';
export type BoundaryOnly = 'closed' | 'open';
export type SideName = 'top' | 'right' | 'bottom' | 'left';

export interface CellVertex {
  id: number;
  open: boolean;
}

export interface CellEdge {
  id: number;
  ends: [number, number];
  class: EdgeClass;
}

export interface CellFace {
  id: number;
  edges: number[];
}

export interface Cellulation {
  format_version: 1;
  name: string;
  vertices: CellVertex[];
  edges: CellEdge[];
  faces: CellFace[];
  dual?: unknown;
  layout?: LayoutBlock;
}

// UI namespace block written into exported files; the core loader ignores
// it (except under --strict).
export interface LayoutBlock {
  document?: unknown;
}

export interface Violation {
  rule: string;
  element: string;
}

export interface ValidationResponse {
  ok: boolean;
  violations: Violation[];
}

export interface CodeInfo {
  name: string;
  n: number;
  k: number;
  x_weight_histogram: Record<string, number>;
  z_weight_histogram: Record<string, number>;
  boundary: Record<string, number>;
}

export interface SweepSettings {
  p_values: number[];
  trials_per_point: number;
  master_seed: number;
  mode: 'both' | 'z_only' | 'x_only';
}

export interface SweepPoint {
  p: number;
  trials: number;
  fail_any: number;
  fail_z: number;
  fail_x: number;
  mean_erasure_weight: number;
  rate_any: number;
  ci_any: [number, number];
  rate_z: number;
  ci_z: [number, number];
  rate_x: number;
  ci_x: [number, number];
}

export interface SweepResultDoc {
  config: SweepSettings;
  surface: { name: string; n: number; k: number };
  points: SweepPoint[];
}

export interface JobSnapshot {
  id: string;
  state: 'queued' | 'running' | 'done' | 'failed';
  progress: { completed_trials: number; total_trials: number };
  error: string | null;
}

export function sameSweepConfig(a: SweepSettings, b: SweepSettings): boolean {
  return (
    a.p_values.length === b.p_values.length &&
    a.p_values.every((p, i) => p === b.p_values[i]) &&
    a.trials_per_point === b.trials_per_point &&
    a.mode === b.mode
  );
}
