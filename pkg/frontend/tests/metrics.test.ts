import { describe, expect, it } from "vitest";
import { MetricHistory } from "../src/metrics.js";
import { makeFrame } from "./helpers.js";

function frameAt(run: number, epoch: number, loss: number) {
  const f = makeFrame({ run, epoch });
  f.metrics.train_loss = loss;
  return f;
}

describe("MetricHistory", () => {
  it("appends exactly one point per new epoch", () => {
    const h = new MetricHistory();
    h.consume(frameAt(0, 0, 0.7));
    expect(h.points.length).toBe(1);
    h.consume(frameAt(0, 1, 0.6));
    expect(h.points.length).toBe(2);
    expect(h.points.map((p) => p.epoch)).toEqual([0, 1]);
  });

  it("updates the current epoch in place", () => {
    const h = new MetricHistory();
    h.consume(frameAt(0, 1, 0.6));
    const moved = h.consume(frameAt(0, 1, 0.55));
    expect(moved).toBe(true);
    expect(h.points.length).toBe(1);
    expect(h.points[0].train_loss).toBe(0.55);
  });

  it("reports no change for an identical same-epoch frame", () => {
    const h = new MetricHistory();
    h.consume(frameAt(0, 1, 0.6));
    expect(h.consume(frameAt(0, 1, 0.6))).toBe(false);
  });

  it("clears on a new run", () => {
    const h = new MetricHistory();
    h.consume(frameAt(0, 5, 0.4));
    h.consume(frameAt(1, 0, 0.7));
    expect(h.points.length).toBe(1);
    expect(h.points[0].epoch).toBe(0);
  });

  it("treats a backwards epoch as a missed reset", () => {
    const h = new MetricHistory();
    h.consume(frameAt(0, 5, 0.4));
    h.consume(frameAt(0, 2, 0.6));
    expect(h.points.map((p) => p.epoch)).toEqual([2]);
  });
});
