/**
 * ChartSpec -> SVG, as pure string-returning functions.
 *
 * The engine only ships declarative specs plus result tables; this module
 * maps every spec kind onto a table and draws it. Unknown kinds (or specs
 * whose columns match no table) degrade to a plain table, never a blank
 * panel. Coordinates are rounded so identical inputs yield identical
 * markup.
 */

import type { AnalysisResultDoc, ChartSpecDoc, Encoding, TableDoc } from "./types.js";
import { esc, fmtCell, renderTable, round2 } from "./render.js";

const W = 560;
const H = 300;
const PAD = { left: 56, right: 16, top: 28, bottom: 44 };

interface Frame {
  x0: number;
  y0: number;
  width: number;
  height: number;
}

const FRAME: Frame = {
  x0: PAD.left,
  y0: PAD.top,
  width: W - PAD.left - PAD.right,
  height: H - PAD.top - PAD.bottom,
};

function svgOpen(title: string): string {
  return (
    `<svg class="chart" viewBox="0 0 ${W} ${H}" role="img" aria-label="${esc(title)}">` +
    `<text class="chart-title" x="${W / 2}" y="18" text-anchor="middle">${esc(title)}</text>`
  );
}

function linearScale(lo: number, hi: number, a: number, b: number) {
  const span = hi - lo || 1;
  return (v: number) => a + ((v - lo) / span) * (b - a);
}

function numericColumn(table: TableDoc, index: number): number[] {
  return table.rows.map((row) => Number(row[index] ?? 0));
}

/** Match an encoding against a table column, tolerating aggregate wrappers. */
function columnIndex(table: TableDoc, enc: Encoding | null): number {
  if (!enc) return -1;
  let index = table.columns.indexOf(enc.column);
  if (index >= 0) return index;
  if (enc.aggregate) {
    index = table.columns.indexOf(`${enc.aggregate}(${enc.column})`);
    if (index >= 0) return index;
  }
  return -1;
}

/** Pick the result table that best carries the spec's encodings. */
export function bindTable(
  spec: ChartSpecDoc,
  tables: Record<string, TableDoc>,
): { name: string; table: TableDoc; xi: number; yi: number } | null {
  const names = Object.keys(tables).sort();
  let fallback: { name: string; table: TableDoc; xi: number; yi: number } | null = null;
  for (const name of names) {
    if (name === "summary") continue;
    const table = tables[name];
    const xi = columnIndex(table, spec.x);
    const yi = columnIndex(table, spec.y);
    if (xi >= 0 && (spec.y === null || yi >= 0)) {
      return { name, table, xi, yi };
    }
    if (!fallback && table.columns.length >= 2 && table.rows.length > 0) {
      fallback = { name, table, xi: 0, yi: 1 };
    }
  }
  return fallback;
}

function axes(xLabel: string, yLabel: string): string {
  const f = FRAME;
  return (
    `<line class="axis" x1="${f.x0}" y1="${f.y0 + f.height}" x2="${f.x0 + f.width}" y2="${f.y0 + f.height}"/>` +
    `<line class="axis" x1="${f.x0}" y1="${f.y0}" x2="${f.x0}" y2="${f.y0 + f.height}"/>` +
    `<text class="axis-label" x="${f.x0 + f.width / 2}" y="${H - 8}" text-anchor="middle">${esc(xLabel)}</text>` +
    `<text class="axis-label" x="14" y="${f.y0 + f.height / 2}" transform="rotate(-90 14 ${f.y0 + f.height / 2})" text-anchor="middle">${esc(yLabel)}</text>`
  );
}

function renderBars(labels: string[], values: number[], title: string,
                    xLabel: string, yLabel: string): string {
  const f = FRAME;
  const hi = Math.max(0, ...values);
  const lo = Math.min(0, ...values);
  const sy = linearScale(lo, hi, f.y0 + f.height, f.y0);
  const step = f.width / Math.max(1, labels.length);
  const barWidth = Math.max(2, step * 0.7);
  let out = svgOpen(title) + axes(xLabel, yLabel);
  labels.forEach((label, i) => {
    const x = round2(f.x0 + i * step + (step - barWidth) / 2);
    const zero = sy(0);
    const top = sy(values[i]);
    const y = round2(Math.min(top, zero));
    const height = round2(Math.abs(zero - top));
    out += `<rect class="bar" x="${x}" y="${y}" width="${round2(barWidth)}" height="${height}"><title>${esc(label)}: ${esc(fmtCell(values[i]))}</title></rect>`;
    if (labels.length <= 20) {
      out += `<text class="tick" x="${round2(x + barWidth / 2)}" y="${f.y0 + f.height + 14}" text-anchor="middle">${esc(String(label).slice(0, 9))}</text>`;
    }
  });
  return out + "</svg>";
}

function renderHistogram(table: TableDoc, title: string, xLabel: string): string {
  const startIdx = table.columns.indexOf("bin_start");
  const endIdx = table.columns.indexOf("bin_end");
  const countIdx = table.columns.indexOf("count");
  const f = FRAME;
  const starts = numericColumn(table, startIdx);
  const ends = numericColumn(table, endIdx);
  const counts = numericColumn(table, countIdx);
  const sx = linearScale(starts[0], ends[ends.length - 1], f.x0, f.x0 + f.width);
  const sy = linearScale(0, Math.max(...counts, 1), f.y0 + f.height, f.y0);
  let out = svgOpen(title) + axes(xLabel, "count");
  counts.forEach((count, i) => {
    const x = round2(sx(starts[i]));
    const width = round2(Math.max(1, sx(ends[i]) - sx(starts[i]) - 1));
    const y = round2(sy(count));
    out += `<rect class="bar" x="${x}" y="${y}" width="${width}" height="${round2(f.y0 + f.height - y)}"><title>[${fmtCell(starts[i])}, ${fmtCell(ends[i])}): ${count}</title></rect>`;
  });
  return out + "</svg>";
}

function renderLine(xs: number[], ys: number[], title: string,
                    xLabel: string, yLabel: string, extra = ""): string {
  const f = FRAME;
  const sx = linearScale(Math.min(...xs), Math.max(...xs), f.x0, f.x0 + f.width);
  const sy = linearScale(Math.min(...ys), Math.max(...ys), f.y0 + f.height, f.y0);
  const points = xs.map((x, i) => `${round2(sx(x))},${round2(sy(ys[i]))}`).join(" ");
  return (
    svgOpen(title) + axes(xLabel, yLabel) +
    `<polyline class="line" fill="none" points="${points}"/>` + extra + "</svg>"
  );
}

function renderScatter(
  xs: number[], ys: number[], title: string, xLabel: string, yLabel: string,
  marker: { x: number; y: number; label: string } | null = null,
): string {
  const f = FRAME;
  const sx = linearScale(Math.min(...xs), Math.max(...xs), f.x0, f.x0 + f.width);
  const sy = linearScale(Math.min(...ys), Math.max(...ys), f.y0 + f.height, f.y0);
  let out = svgOpen(title) + axes(xLabel, yLabel);
  xs.forEach((x, i) => {
    out += `<circle class="dot" cx="${round2(sx(x))}" cy="${round2(sy(ys[i]))}" r="2.5"/>`;
  });
  if (marker) {
    out +=
      `<circle class="best-marker" cx="${round2(sx(marker.x))}" cy="${round2(sy(marker.y))}" r="6"/>` +
      `<text class="best-label" x="${round2(sx(marker.x))}" y="${round2(sy(marker.y) - 10)}" text-anchor="middle">${esc(marker.label)}</text>`;
  }
  return out + "</svg>";
}

function renderBox(table: TableDoc, title: string, xLabel: string, yLabel: string): string {
  // the engine's comparison table carries per-group count/mean/std;
  // boxes draw mean with one-std whiskers
  const meanIdx = table.columns.indexOf("mean");
  const stdIdx = table.columns.indexOf("std");
  const labels = table.rows.map((row) => String(row[0]));
  const means = numericColumn(table, meanIdx);
  const stds = numericColumn(table, stdIdx);
  const f = FRAME;
  const lows = means.map((m, i) => m - stds[i]);
  const highs = means.map((m, i) => m + stds[i]);
  const sy = linearScale(Math.min(...lows), Math.max(...highs), f.y0 + f.height, f.y0);
  const step = f.width / Math.max(1, labels.length);
  let out = svgOpen(title) + axes(xLabel, yLabel);
  labels.forEach((label, i) => {
    const cx = round2(f.x0 + (i + 0.5) * step);
    const boxW = Math.max(10, step * 0.4);
    out +=
      `<line class="whisker" x1="${cx}" y1="${round2(sy(lows[i]))}" x2="${cx}" y2="${round2(sy(highs[i]))}"/>` +
      `<rect class="box" x="${round2(cx - boxW / 2)}" y="${round2(sy(means[i]) - 4)}" width="${round2(boxW)}" height="8"><title>${esc(label)}: mean ${fmtCell(means[i])} std ${fmtCell(stds[i])}</title></rect>` +
      `<text class="tick" x="${cx}" y="${f.y0 + f.height + 14}" text-anchor="middle">${esc(label.slice(0, 9))}</text>`;
  });
  return out + "</svg>";
}

function renderPie(table: TableDoc, title: string): string {
  const shareIdx = table.columns.indexOf("share");
  const labels = table.rows.map((row) => String(row[0]));
  const shares = numericColumn(table, shareIdx >= 0 ? shareIdx : 1);
  const cx = W / 2;
  const cy = PAD.top + (H - PAD.top - PAD.bottom) / 2;
  const r = Math.min(W, H) / 3;
  let angle = -Math.PI / 2;
  let out = svgOpen(title);
  labels.forEach((label, i) => {
    const sweep = shares[i] * 2 * Math.PI;
    const x1 = round2(cx + r * Math.cos(angle));
    const y1 = round2(cy + r * Math.sin(angle));
    angle += sweep;
    const x2 = round2(cx + r * Math.cos(angle));
    const y2 = round2(cy + r * Math.sin(angle));
    const large = sweep > Math.PI ? 1 : 0;
    out += `<path class="slice slice-${i % 8}" d="M${cx},${cy} L${x1},${y1} A${r},${r} 0 ${large} 1 ${x2},${y2} Z"><title>${esc(label)}: ${fmtCell(shares[i])}</title></path>`;
  });
  return out + "</svg>";
}

function renderHeatmap(table: TableDoc, title: string): string {
  // generic [row, col, value] long-format heatmap
  const rows = [...new Set(table.rows.map((r) => String(r[0])))];
  const cols = [...new Set(table.rows.map((r) => String(r[1])))];
  const f = FRAME;
  const cellW = f.width / Math.max(1, cols.length);
  const cellH = f.height / Math.max(1, rows.length);
  const values = table.rows.map((r) => Number(r[2] ?? 0));
  const lo = Math.min(...values);
  const hi = Math.max(...values);
  let out = svgOpen(title);
  table.rows.forEach((row) => {
    const ri = rows.indexOf(String(row[0]));
    const ci = cols.indexOf(String(row[1]));
    const v = Number(row[2] ?? 0);
    const t = hi === lo ? 0.5 : (v - lo) / (hi - lo);
    const alpha = round2(0.15 + 0.85 * t);
    out += `<rect class="cell" x="${round2(f.x0 + ci * cellW)}" y="${round2(f.y0 + ri * cellH)}" width="${round2(cellW)}" height="${round2(cellH)}" fill-opacity="${alpha}"><title>${esc(String(row[0]))} / ${esc(String(row[1]))}: ${fmtCell(v)}</title></rect>`;
  });
  return out + "</svg>";
}

export function fallbackPanel(spec: ChartSpecDoc, tables: Record<string, TableDoc>): string {
  const names = Object.keys(tables).sort();
  const name = names.find((n) => n !== "summary") ?? names[0];
  const note = `<p class="chart-fallback-note">No renderer for chart kind "${esc(spec.kind)}"; showing the ${esc(name ?? "result")} table.</p>`;
  if (!name) return note;
  return note + renderTable(tables[name].columns, tables[name].rows);
}

/** Render a result's chart; unknown kinds degrade to the fallback table. */
export function renderChart(result: AnalysisResultDoc): string {
  const spec = result.chart;
  const bound = bindTable(spec, result.tables);
  if (!bound) return fallbackPanel(spec, result.tables);
  const { table, xi, yi } = bound;
  const xLabel = spec.x.column;
  const yLabel = spec.y ? spec.y.column : "";

  switch (spec.kind) {
    case "histogram":
      if (table.columns.includes("bin_start")) {
        return renderHistogram(table, spec.title, xLabel);
      }
      return renderBars(
        table.rows.map((r) => String(r[0])), numericColumn(table, 1),
        spec.title, xLabel, "count",
      );
    case "bar":
      return renderBars(
        table.rows.map((row) => String(row[xi])),
        numericColumn(table, yi >= 0 ? yi : 1),
        spec.title, xLabel, yLabel || "value",
      );
    case "line":
      return renderLine(
        numericColumn(table, xi), numericColumn(table, yi >= 0 ? yi : 1),
        spec.title, xLabel, yLabel || "value",
      );
    case "scatter":
      return renderScatter(
        numericColumn(table, xi), numericColumn(table, yi >= 0 ? yi : 1),
        spec.title, xLabel, yLabel || "value",
      );
    case "box":
      if (table.columns.includes("mean") && table.columns.includes("std")) {
        return renderBox(table, spec.title, xLabel, yLabel || "value");
      }
      return fallbackPanel(spec, result.tables);
    case "pie":
      return renderPie(table, spec.title);
    case "heatmap":
      if (table.columns.length >= 3) {
        return renderHeatmap(table, spec.title);
      }
      return fallbackPanel(spec, result.tables);
    default:
      return fallbackPanel(spec, result.tables);
  }
}

/** Simulation trace scatter with the best configuration marked. */
export function renderSimulationChart(
  feature: string,
  trace: Record<string, number | string>[],
  best: Record<string, number | string>,
  predicted: number,
): string {
  const xs = trace.map((p) => Number(p[feature]));
  const ys = trace.map((p) => Number(p["prediction"]));
  return renderScatter(
    xs, ys, `Predicted target over ${feature}`, feature, "prediction",
    { x: Number(best[feature]), y: predicted, label: `best ${feature} = ${fmtCell(Number(best[feature]))}` },
  );
}
