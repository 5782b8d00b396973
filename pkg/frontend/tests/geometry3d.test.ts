import { describe, expect, it } from "vitest";
import {
  BELL_EDGES,
  Camera,
  defaultCamera,
  depthOrder,
  DISTANCE_RANGE,
  edgeMidpoint,
  orbit,
  PITCH_LIMIT,
  project,
  sphereWireframe,
  TETRA_EDGES,
  TETRA_VERTICES,
  zoom,
} from "../src/geometry3d.js";

const cam: Camera = { yaw: 0, pitch: 0, distance: 4 };

describe("projection", () => {
  it("keeps the origin at the canvas center", () => {
    const q = project([0, 0, 0], cam, 200, 200, 80);
    expect(q.x).toBeCloseTo(100);
    expect(q.y).toBeCloseTo(100);
    expect(q.depth).toBeCloseTo(0);
    expect(q.scale).toBeCloseTo(1);
  });

  it("maps world +z to screen up", () => {
    const q = project([0, 0, 1], cam, 200, 200, 80);
    expect(q.x).toBeCloseTo(100);
    expect(q.y).toBeCloseTo(20);
  });

  it("maps world +x to screen right at zero yaw", () => {
    const q = project([1, 0, 0], cam, 200, 200, 80);
    expect(q.x).toBeCloseTo(180);
    expect(q.y).toBeCloseTo(100);
  });

  it("shrinks points that sit farther from the viewer", () => {
    const far = project([0, 1, 0], cam, 200, 200, 80);
    expect(far.depth).toBeCloseTo(1);
    expect(far.scale).toBeCloseTo(4 / 5);
    const near = project([0, -1, 0], cam, 200, 200, 80);
    expect(near.scale).toBeGreaterThan(1);
  });

  it("moves a point into depth when the camera yaws a quarter turn", () => {
    const q = project([1, 0, 0], { ...cam, yaw: Math.PI / 2 }, 200, 200, 80);
    expect(q.x).toBeCloseTo(100);
    expect(q.depth).toBeCloseTo(1);
  });
});

describe("camera", () => {
  it("clamps pitch at the poles", () => {
    expect(orbit(defaultCamera(), 0, 10).pitch).toBe(PITCH_LIMIT);
    expect(orbit(defaultCamera(), 0, -10).pitch).toBe(-PITCH_LIMIT);
  });

  it("accumulates yaw without bound", () => {
    const turned = orbit(orbit(defaultCamera(), 3, 0), 4, 0);
    expect(turned.yaw).toBeCloseTo(defaultCamera().yaw + 7);
  });

  it("clamps zoom to the distance range", () => {
    expect(zoom(cam, 1e6).distance).toBe(DISTANCE_RANGE[1]);
    expect(zoom(cam, 1e-6).distance).toBe(DISTANCE_RANGE[0]);
    expect(zoom(cam, 1.5).distance).toBeCloseTo(6);
  });
});

describe("depth ordering", () => {
  it("orders indices far to near", () => {
    expect(depthOrder([1, 3, 2])).toEqual([1, 2, 0]);
    expect(depthOrder([])).toEqual([]);
  });
});

describe("sphere wireframe", () => {
  it("draws five parallels and four meridians", () => {
    const lines = sphereWireframe();
    expect(lines.length).toBe(9);
    for (const line of lines) {
      expect(line.length).toBe(49);
    }
  });

  it("keeps every wireframe point on the unit sphere", () => {
    for (const line of sphereWireframe(12)) {
      for (const [x, y, z] of line) {
        expect(Math.hypot(x, y, z)).toBeCloseTo(1, 9);
      }
    }
  });
});

describe("tetrahedron", () => {
  it("uses unit vertices with uniform pairwise angles", () => {
    expect(TETRA_VERTICES.length).toBe(4);
    for (const [x, y, z] of TETRA_VERTICES) {
      expect(Math.hypot(x, y, z)).toBeCloseTo(1, 9);
    }
    for (let a = 0; a < 4; a++) {
      for (let b = a + 1; b < 4; b++) {
        const u = TETRA_VERTICES[a];
        const v = TETRA_VERTICES[b];
        const dot = u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
        expect(dot).toBeCloseTo(-1 / 3, 9);
      }
    }
  });

  it("has six edges and two disjoint highlighted ones", () => {
    expect(TETRA_EDGES.length).toBe(6);
    const [e0, e1] = BELL_EDGES;
    expect(new Set([...e0, ...e1]).size).toBe(4);
  });

  it("puts the highlighted-edge midpoints on the z axis", () => {
    const m0 = edgeMidpoint(BELL_EDGES[0] as [number, number]);
    const m1 = edgeMidpoint(BELL_EDGES[1] as [number, number]);
    expect(m0[0]).toBeCloseTo(0);
    expect(m0[1]).toBeCloseTo(0);
    expect(m0[2]).toBeCloseTo(1 / Math.sqrt(3), 9);
    expect(m1[2]).toBeCloseTo(-1 / Math.sqrt(3), 9);
  });
});
