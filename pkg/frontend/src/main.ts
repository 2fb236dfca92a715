import { ApiClient } from "./api.js";
import { createBoard, paintColoring, paintTarget, summaryLine } from "./board.js";
import { DICTATION_CHEATSHEET, GRID_CHEATSHEET } from "./cheatsheet.js";
import { markerOffset, renderErrorHighlight } from "./highlight.js";
import {
  UiState,
  beginSubmit,
  completeSubmit,
  editInput,
  failSubmit,
  initialState,
  selectExercise,
} from "./state.js";
import { isGridEntry } from "./types.js";

const api = new ApiClient((window as any).FOLEX_API_BASE ?? "");

let state: UiState = initialState([]);
let board: HTMLTableElement | null = null;

const els = {
  list: byId("exercise-list"),
  prompt: byId("prompt"),
  input: byId("formula-input") as HTMLTextAreaElement,
  submit: byId("submit") as HTMLButtonElement,
  message: byId("message"),
  boardHost: byId("board-host"),
  summary: byId("summary"),
  highlightHost: byId("highlight-host"),
  banner: byId("banner"),
  cheatsheet: byId("cheatsheet"),
};

function byId(id: string): HTMLElement {
  const el = document.getElementById(id);
  if (!el) throw new Error(`missing element #${id}`);
  return el;
}

function render() {
  els.submit.toggleAttribute("disabled", state.inFlight || state.selected === null);
  els.banner.textContent = state.networkError ?? "";
  els.banner.classList.toggle("hidden", state.networkError === null);

  const ex = state.selected;
  if (ex === null) {
    els.prompt.textContent = "Choose an exercise.";
    els.cheatsheet.textContent = "";
    return;
  }
  els.prompt.textContent = isGridEntry(ex) ? ex.description : ex.prompt;
  els.cheatsheet.textContent = isGridEntry(ex) ? GRID_CHEATSHEET : DICTATION_CHEATSHEET;

  const response = state.lastResponse;
  els.message.textContent = response?.message ?? "";
  els.message.dataset.category = response?.category ?? "";

  els.highlightHost.replaceChildren();
  if (response?.reason?.kind === "parse_error" && response.reason.offset !== undefined) {
    els.highlightHost.appendChild(
      renderErrorHighlight(state.input, response.reason.offset),
    );
  }

  if (isGridEntry(ex) && board !== null) {
    if (response?.coloring) {
      paintColoring(board, response.coloring);
      els.summary.textContent = summaryLine(board);
    } else {
      // before the first graded submission (and after rejected ones the
      // board keeps showing the problem): target squares in yellow
      if (response === null) paintTarget(board, ex.yellow);
      els.summary.textContent = response === null ? "" : els.summary.textContent;
    }
  }
}

function mountExercise() {
  els.boardHost.replaceChildren();
  els.summary.textContent = "";
  board = null;
  const ex = state.selected;
  if (ex !== null && isGridEntry(ex)) {
    board = createBoard(ex);
    els.boardHost.appendChild(board);
  }
  els.input.value = "";
  render();
}

async function submit() {
  const ex = state.selected;
  if (ex === null || state.inFlight) return;
  state = editInput(state, els.input.value);
  state = beginSubmit(state);
  render();
  try {
    const response = await api.check(ex.id, state.input);
    state = completeSubmit(state, response);
  } catch (err) {
    state = failSubmit(state, `Could not reach the grading service: ${err}`);
  }
  render();
}

async function boot() {
  const exercises = await api.listExercises();
  state = initialState(exercises);
  els.list.replaceChildren();
  for (const ex of exercises) {
    const li = document.createElement("li");
    const button = document.createElement("button");
    button.textContent = `${ex.id} (${ex.type})`;
    button.addEventListener("click", () => {
      state = selectExercise(state, ex.id);
      mountExercise();
    });
    li.appendChild(button);
    els.list.appendChild(li);
  }
  els.submit.addEventListener("click", () => void submit());
  els.input.addEventListener("input", () => {
    state = editInput(state, els.input.value);
  });
  render();
}

void boot();

// exposed for the browser console and ad-hoc debugging
export { markerOffset, state };
