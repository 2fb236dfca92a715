import { describe, expect, it } from "vitest";

import {
  beginSubmit,
  completeSubmit,
  editInput,
  failSubmit,
  initialState,
  selectExercise,
} from "../src/state.js";
import type { CheckResponse, ExerciseEntry } from "../src/types.js";

import records from "./fixtures/recorded_responses.json";

const RECORDS = records as unknown as {
  exercise: ExerciseEntry;
  formula: string;
  response: CheckResponse;
}[];

const EXERCISES = Array.from(
  new Map(RECORDS.map((r) => [r.exercise.id, r.exercise])).values(),
);

describe("ui state transitions", () => {
  it("selecting an exercise clears input and response", () => {
    let s = initialState(EXERCISES);
    s = selectExercise(s, EXERCISES[0]!.id);
    s = editInput(s, "x=u");
    s = completeSubmit(s, RECORDS[0]!.response);
    s = selectExercise(s, EXERCISES[1]!.id);
    expect(s.selected?.id).toBe(EXERCISES[1]!.id);
    expect(s.input).toBe("");
    expect(s.lastResponse).toBeNull();
  });

  it("input text is kept byte-for-byte", () => {
    const weird = "  Ax: x<y ∧ y<z  ";
    let s = initialState(EXERCISES);
    s = selectExercise(s, EXERCISES[0]!.id);
    s = editInput(s, weird);
    expect(s.input).toBe(weird);
  });

  it("only one submission can be in flight", () => {
    let s = initialState(EXERCISES);
    s = selectExercise(s, EXERCISES[0]!.id);
    s = beginSubmit(s);
    expect(s.inFlight).toBe(true);
    const again = beginSubmit(s);
    expect(again).toBe(s); // no state change while awaiting
    s = completeSubmit(s, RECORDS[0]!.response);
    expect(s.inFlight).toBe(false);
    expect(s.lastResponse).toEqual(RECORDS[0]!.response);
  });

  it("a network failure is non-destructive", () => {
    let s = initialState(EXERCISES);
    s = selectExercise(s, EXERCISES[0]!.id);
    s = editInput(s, "rechts(u,x)");
    s = completeSubmit(beginSubmit(s), RECORDS[1]!.response);
    const before = s;
    s = failSubmit(beginSubmit(s), "connection refused");
    expect(s.networkError).toContain("connection refused");
    expect(s.input).toBe(before.input);
    expect(s.lastResponse).toEqual(before.lastResponse);
    expect(s.inFlight).toBe(false);
  });

  it("cannot submit without a selected exercise", () => {
    const s = initialState(EXERCISES);
    expect(beginSubmit(s)).toBe(s);
  });
});
