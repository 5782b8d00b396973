import { describe, expect, it } from "vitest";
import { boundaryMask, confidenceAlpha, GRID_BOUND } from "../src/heatmap.js";

describe("boundaryMask", () => {
  it("marks nothing on a uniform grid", () => {
    expect(boundaryMask([0, 0, 0, 0], 2)).toEqual([false, false, false, false]);
  });

  it("marks a lone cell and its four neighbors", () => {
    const labels = [0, 0, 0, 0, 1, 0, 0, 0, 0];
    expect(boundaryMask(labels, 3)).toEqual([
      false, true, false,
      true, true, true,
      false, true, false,
    ]);
  });

  it("follows the quadrant boundary of a checkerboard truth", () => {
    // index = iy * res + ix, x fastest, y ascending
    const labels = [1, 1, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0, 1, 1];
    const mask = boundaryMask(labels, 4);
    // interior corners of the four quadrants all touch another class
    expect(mask[1 * 4 + 1]).toBe(true);
    expect(mask[2 * 4 + 2]).toBe(true);
    // outer corners sit inside their quadrant
    expect(mask[0]).toBe(false);
    expect(mask[15]).toBe(false);
  });
});

describe("confidenceAlpha", () => {
  it("fades chance-level scores and saturates certainty", () => {
    expect(confidenceAlpha(0.5, 2)).toBeCloseTo(0.08);
    expect(confidenceAlpha(1.0, 2)).toBeCloseTo(0.8);
    expect(confidenceAlpha(0.75, 2)).toBeCloseTo(0.44);
  });

  it("clamps scores below chance", () => {
    expect(confidenceAlpha(0.1, 2)).toBeCloseTo(0.08);
    expect(confidenceAlpha(0.0, 4)).toBeCloseTo(0.08);
  });

  it("uses the class count for the chance level", () => {
    expect(confidenceAlpha(0.25, 4)).toBeCloseTo(0.08);
    expect(confidenceAlpha(1.0, 4)).toBeCloseTo(0.8);
  });
});

describe("grid bound", () => {
  it("matches the service's sampling window", () => {
    expect(GRID_BOUND).toBe(1.2);
  });
});
