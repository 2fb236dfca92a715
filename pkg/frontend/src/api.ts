import type { CheckResponse, ExerciseEntry } from "./types.js";

export class ApiClient {
  constructor(private readonly baseUrl: string = "") {}

  async listExercises(): Promise<ExerciseEntry[]> {
    const r = await fetch(`${this.baseUrl}/api/exercises`);
    if (!r.ok) throw new Error(`listing failed: HTTP ${r.status}`);
    return r.json();
  }

  async check(exerciseId: string, formula: string): Promise<CheckResponse> {
    // the formula is passed through byte-for-byte: no trimming, no rewriting
    const r = await fetch(
      `${this.baseUrl}/api/exercises/${encodeURIComponent(exerciseId)}/check`,
      {
        method: "POST",
        headers: { "Content-Type": "application/json" },
        body: JSON.stringify({ formula }),
      },
    );
    if (!r.ok) throw new Error(`check failed: HTTP ${r.status}`);
    return r.json();
  }
}
