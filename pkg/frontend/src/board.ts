import type { Coloring, CoordPair, GridEntry } from "./types.js";

// The board is a table of grid_size x grid_size cells. Row +half is at the
// top (above on screen means up), column -half at the left. Every cell
// carries data-col / data-row; colors are applied only from server
// payloads via data-color.

export function createBoard(exercise: GridEntry): HTMLTableElement {
  const half = Math.floor(exercise.grid_size / 2);
  const table = document.createElement("table");
  table.className = "board";
  const letters = new Map<string, string>();
  for (const [name, [c, r]] of Object.entries(exercise.constants)) {
    letters.set(`${c},${r}`, name);
  }
  for (let row = half; row >= -half; row--) {
    const tr = document.createElement("tr");
    for (let col = -half; col <= half; col++) {
      const td = document.createElement("td");
      td.dataset.col = String(col);
      td.dataset.row = String(row);
      const label = letters.get(`${col},${row}`);
      if (label !== undefined) td.textContent = label;
      tr.appendChild(td);
    }
    table.appendChild(tr);
  }
  paintTarget(table, exercise.yellow);
  return table;
}

function cells(table: HTMLTableElement): HTMLTableCellElement[] {
  return Array.from(table.querySelectorAll("td"));
}

function clearColors(table: HTMLTableElement) {
  for (const td of cells(table)) delete td.dataset.color;
}

/** Pre-submission view: the problem's yellow squares, nothing else. */
export function paintTarget(table: HTMLTableElement, yellow: CoordPair[]) {
  clearColors(table);
  paint(table, yellow, "yellow");
}

/** Post-submission view: exactly the coloring reported by the service. */
export function paintColoring(table: HTMLTableElement, coloring: Coloring) {
  clearColors(table);
  paint(table, coloring.green, "green");
  paint(table, coloring.red, "red");
  paint(table, coloring.yellow, "yellow");
}

function paint(table: HTMLTableElement, squares: CoordPair[], color: string) {
  for (const [col, row] of squares) {
    const td = table.querySelector<HTMLTableCellElement>(
      `td[data-col="${col}"][data-row="${row}"]`,
    );
    if (td) td.dataset.color = color;
  }
}

export interface ColorCounts {
  green: number;
  red: number;
  yellow: number;
}

export function colorCounts(table: HTMLTableElement): ColorCounts {
  const counts: ColorCounts = { green: 0, red: 0, yellow: 0 };
  for (const td of cells(table)) {
    const c = td.dataset.color;
    if (c === "green" || c === "red" || c === "yellow") counts[c] += 1;
  }
  return counts;
}

export function summaryLine(table: HTMLTableElement): string {
  const c = colorCounts(table);
  return `${c.green} green, ${c.red} red, ${c.yellow} yellow`;
}
