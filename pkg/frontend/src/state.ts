import type { CheckResponse, ExerciseEntry } from "./types.js";

// One submission may be in flight at a time; the grid always reflects the
// most recent response. State transitions are pure so they can be tested
// without a DOM.

export interface UiState {
  exercises: ExerciseEntry[];
  selected: ExerciseEntry | null;
  input: string;
  lastResponse: CheckResponse | null;
  inFlight: boolean;
  networkError: string | null;
}

export function initialState(exercises: ExerciseEntry[]): UiState {
  return {
    exercises,
    selected: null,
    input: "",
    lastResponse: null,
    inFlight: false,
    networkError: null,
  };
}

export function selectExercise(state: UiState, id: string): UiState {
  const selected = state.exercises.find((e) => e.id === id) ?? null;
  return { ...state, selected, input: "", lastResponse: null, networkError: null };
}

export function editInput(state: UiState, input: string): UiState {
  return { ...state, input };
}

export function beginSubmit(state: UiState): UiState {
  if (state.inFlight || state.selected === null) return state;
  return { ...state, inFlight: true, networkError: null };
}

export function completeSubmit(state: UiState, response: CheckResponse): UiState {
  return { ...state, inFlight: false, lastResponse: response };
}

export function failSubmit(state: UiState, message: string): UiState {
  // non-destructive: the previous response and the input are retained
  return { ...state, inFlight: false, networkError: message };
}
