// Parse errors carry a character offset; the input is echoed with the
// offending position wrapped in a marker span so the student sees exactly
// where the parser gave up.

export function renderErrorHighlight(input: string, offset: number): HTMLElement {
  const container = document.createElement("pre");
  container.className = "error-highlight";
  const before = document.createTextNode(input.slice(0, offset));
  const marker = document.createElement("span");
  marker.className = "error-marker";
  marker.dataset.offset = String(offset);
  // at end-of-input errors there is no character to mark; show a caret
  marker.textContent = offset < input.length ? input.charAt(offset) : "‸";
  const after = document.createTextNode(
    offset < input.length ? input.slice(offset + 1) : "",
  );
  container.append(before, marker, after);
  return container;
}

/** The character index the marker lands on (for tests and callers). */
export function markerOffset(highlight: HTMLElement): number | null {
  const marker = highlight.querySelector<HTMLElement>(".error-marker");
  if (!marker || marker.dataset.offset === undefined) return null;
  return Number(marker.dataset.offset);
}
