import { describe, expect, it } from "vitest";

import { renderSimulationChart } from "../src/charts.js";
import type { SimulationResultDoc } from "../src/types.js";
import simFixture from "./fixtures/simulation_quadratic.json";

const sim = simFixture as unknown as SimulationResultDoc;

// the chart frame constants baked into charts.ts
const X0 = 56;
const WIDTH = 560 - 56 - 16;

function scaleX(value: number, lo: number, hi: number): number {
  return X0 + ((value - lo) / (hi - lo)) * WIDTH;
}

describe("simulation view on the quadratic demo", () => {
  it("marks the best configuration near the true optimum x = 3", () => {
    // fixture recorded from the real engine: depth-8 tree on
    // y = -(x-3)^2 + 10, maximize over x in [0, 6]
    const best = Number(sim.best_configuration["x"]);
    expect(Math.abs(best - 3.0)).toBeLessThan(0.2);

    const markup = renderSimulationChart("x", sim.trace, sim.best_configuration, sim.predicted_target);
    const match = markup.match(/<circle class="best-marker" cx="([\d.]+)"/);
    expect(match).not.toBeNull();
    const markerX = Number(match![1]);

    const xs = sim.trace.map((p) => Number(p["x"]));
    const lo = Math.min(...xs);
    const hi = Math.max(...xs);
    const expected = scaleX(best, lo, hi);
    expect(Math.abs(markerX - expected)).toBeLessThan(0.75);

    // the marker sits within the 0.2-tolerance band around x = 3
    const bandLo = scaleX(2.8, lo, hi);
    const bandHi = scaleX(3.2, lo, hi);
    expect(markerX).toBeGreaterThan(bandLo);
    expect(markerX).toBeLessThan(bandHi);
  });

  it("draws every trace point", () => {
    const markup = renderSimulationChart("x", sim.trace, sim.best_configuration, sim.predicted_target);
    const dots = markup.match(/<circle class="dot"/g) ?? [];
    expect(dots.length).toBe(sim.trace.length);
  });

  it("labels the best value", () => {
    const markup = renderSimulationChart("x", sim.trace, sim.best_configuration, sim.predicted_target);
    expect(markup).toContain("best x =");
  });
});
