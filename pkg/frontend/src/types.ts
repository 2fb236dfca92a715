// Shapes of the grading service's JSON payloads. The client renders these
// verbatim and performs no grading logic of its own.

export type CoordPair = [number, number];

export interface DictationEntry {
  id: string;
  type: "dictation";
  prompt: string;
}

export interface GridEntry {
  id: string;
  type: "grid";
  description: string;
  constants: Record<string, CoordPair>;
  grid_size: number;
  yellow: CoordPair[];
}

export type ExerciseEntry = DictationEntry | GridEntry;

export interface Coloring {
  green: CoordPair[];
  red: CoordPair[];
  yellow: CoordPair[];
}

export interface RejectionReason {
  kind: string;
  detail: string;
  offset?: number;
}

export interface CheckResponse {
  category: string;
  message: string;
  coloring?: Coloring;
  reason?: RejectionReason;
}

export function isGridEntry(e: ExerciseEntry): e is GridEntry {
  return e.type === "grid";
}
