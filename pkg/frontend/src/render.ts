/** Shared pure-rendering helpers. All view output flows through these. */

export function esc(value: unknown): string {
  return String(value)
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function fmtCell(value: unknown): string {
  if (value === null || value === undefined) return "";
  if (typeof value === "number") {
    if (Number.isInteger(value)) return String(value);
    return value.toPrecision(6).replace(/\.?0+$/, "");
  }
  return String(value);
}

export function renderTable(
  columns: string[],
  rows: (string | number | null)[][],
  className = "data-table",
): string {
  const head = columns.map((c) => `<th>${esc(c)}</th>`).join("");
  const body = rows
    .map(
      (row) =>
        `<tr>${row.map((cell) => `<td>${esc(fmtCell(cell))}</td>`).join("")}</tr>`,
    )
    .join("");
  return `<table class="${className}"><thead><tr>${head}</tr></thead><tbody>${body}</tbody></table>`;
}

export function round2(value: number): number {
  return Math.round(value * 100) / 100;
}
