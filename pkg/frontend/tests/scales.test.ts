import { describe, expect, it } from "vitest";
import { linearScale, niceStep, padded, ticks } from "../src/scales.js";

describe("linearScale", () => {
  it("maps the domain onto the range", () => {
    const s = linearScale([0, 10], [0, 100]);
    expect(s.map(0)).toBe(0);
    expect(s.map(5)).toBe(50);
    expect(s.map(10)).toBe(100);
  });

  it("supports inverted pixel ranges", () => {
    const s = linearScale([0, 1], [180, 20]);
    expect(s.map(0)).toBe(180);
    expect(s.map(1)).toBe(20);
  });

  it("survives a degenerate domain", () => {
    const s = linearScale([3, 3], [0, 100]);
    expect(s.map(3)).toBe(0);
    expect(Number.isFinite(s.map(4))).toBe(true);
  });
});

describe("niceStep", () => {
  it("rounds up to 1, 2 or 5 times a power of ten", () => {
    expect(niceStep(0.23)).toBeCloseTo(0.5);
    expect(niceStep(0.19)).toBeCloseTo(0.2);
    expect(niceStep(1)).toBe(1);
    expect(niceStep(7)).toBe(10);
    expect(niceStep(34)).toBe(50);
  });
});

describe("ticks", () => {
  it("covers the extent at a round step", () => {
    expect(ticks(0, 1, 4)).toEqual([0, 0.5, 1]);
    expect(ticks(0, 100, 6)).toEqual([0, 20, 40, 60, 80, 100]);
  });

  it("snaps float drift so labels render clean", () => {
    for (const t of ticks(0, 0.3, 4)) {
      expect(String(t).length).toBeLessThan(6);
    }
  });

  it("degrades to the low bound when the extent is empty", () => {
    expect(ticks(2, 2)).toEqual([2]);
  });
});

describe("padded", () => {
  it("pads a proper extent on both sides", () => {
    expect(padded(0, 1)).toEqual([-0.08, 1.08]);
  });

  it("bumps a collapsed extent open", () => {
    const [lo, hi] = padded(2, 2);
    expect(lo).toBeLessThan(2);
    expect(hi).toBeGreaterThan(2);
    expect(padded(0, 0)).toEqual([-1, 1]);
  });
});
