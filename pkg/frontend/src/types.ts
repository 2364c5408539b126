/** Schema of the exported bundle and the in-memory model built from it. */

export interface BundleMeta {
  graph: string;
  nodes: number;
  edges: number;
  structures: number;
  unclassified_nodes: number;
  unclassified_incident_edges: number;
  config: Record<string, unknown>;
}

export interface BundleSegment {
  type: string;
  count: number;
  /** first matrix position of the segment */
  offset: number;
}

export interface BundleInstance {
  id: number;
  type: string;
  /** node count of the structure */
  n: number;
  /** total edges to other structures */
  ext: number;
  members?: string[];
}

export interface Bundle {
  meta: BundleMeta;
  segments: BundleSegment[];
  /** one record per matrix position, in matrix order */
  instances: BundleInstance[];
  /** half matrix: [row, col, d, sizeSum] with row < col */
  cells: [number, number, number, number][];
  color_domain: [number, number];
}

/** One (directed) matrix cell after mirroring the half matrix. */
export interface Cell {
  row: number;
  col: number;
  d: number;
  sizeSum: number;
}

export interface Model {
  meta: BundleMeta;
  segments: BundleSegment[];
  instances: BundleInstance[];
  /** symmetric cell set (both orientations of every pair) */
  cells: Cell[];
  colorDomain: [number, number];
  matrixSize: number;
}

export type ScaleMode = "log" | "linear";

/** Inclusive matrix-coordinate window. */
export interface MatrixWindow {
  row0: number;
  row1: number;
  col0: number;
  col1: number;
}
