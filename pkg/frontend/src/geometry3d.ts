// Minimal 3D math for the state panels: an orbit camera around the origin
// plus wireframe polylines for the unit sphere and the probability
// tetrahedron. Everything here is pure so it can be unit tested; canvas
// drawing lives in panels.ts.

export type Vec3 = readonly [number, number, number];

export interface Camera {
  yaw: number; // rotation about the world z axis (radians)
  pitch: number; // tilt toward the viewer, clamped to avoid pole flips
  distance: number; // perspective eye distance in scene units
}

export const PITCH_LIMIT = 1.45;
export const DISTANCE_RANGE: readonly [number, number] = [2.0, 12.0];

export function defaultCamera(): Camera {
  return { yaw: -0.5, pitch: 0.35, distance: 4.0 };
}

export function orbit(cam: Camera, dYaw: number, dPitch: number): Camera {
  const pitch = Math.min(PITCH_LIMIT, Math.max(-PITCH_LIMIT, cam.pitch + dPitch));
  return { ...cam, yaw: cam.yaw + dYaw, pitch };
}

export function zoom(cam: Camera, factor: number): Camera {
  const [lo, hi] = DISTANCE_RANGE;
  const distance = Math.min(hi, Math.max(lo, cam.distance * factor));
  return { ...cam, distance };
}

export interface Projected {
  x: number; // canvas px
  y: number; // canvas px
  depth: number; // view-space distance component; larger is farther
  scale: number; // perspective shrink factor, 1 at the origin plane
}

/**
 * Project a scene point to canvas coordinates.
 *
 * The world z axis maps to screen up. Yaw spins the scene about z, pitch
 * tips it toward the viewer, and a mild perspective divide by the eye
 * distance keeps nearer points slightly larger.
 */
export function project(
  p: Vec3,
  cam: Camera,
  width: number,
  height: number,
  radiusPx: number,
): Projected {
  const cy = Math.cos(cam.yaw);
  const sy = Math.sin(cam.yaw);
  const x1 = p[0] * cy - p[1] * sy;
  const y1 = p[0] * sy + p[1] * cy;
  const cp = Math.cos(cam.pitch);
  const sp = Math.sin(cam.pitch);
  const depth = y1 * cp - p[2] * sp;
  const up = y1 * sp + p[2] * cp;
  const scale = cam.distance / (cam.distance + depth);
  return {
    x: width / 2 + x1 * scale * radiusPx,
    y: height / 2 - up * scale * radiusPx,
    depth,
    scale,
  };
}

/** Indices into `items` ordered far to near, for painter's-algorithm draws. */
export function depthOrder(depths: readonly number[]): number[] {
  const idx = depths.map((_, i) => i);
  idx.sort((a, b) => depths[b] - depths[a]);
  return idx;
}

function circlePoints(
  axisU: Vec3,
  axisV: Vec3,
  center: Vec3,
  radius: number,
  segments: number,
): Vec3[] {
  const pts: Vec3[] = [];
  for (let i = 0; i <= segments; i++) {
    const t = (2 * Math.PI * i) / segments;
    const c = Math.cos(t) * radius;
    const s = Math.sin(t) * radius;
    pts.push([
      center[0] + axisU[0] * c + axisV[0] * s,
      center[1] + axisU[1] * c + axisV[1] * s,
      center[2] + axisU[2] * c + axisV[2] * s,
    ]);
  }
  return pts;
}

/** Wireframe for the unit sphere: parallels plus meridians. */
export function sphereWireframe(segments = 48): Vec3[][] {
  const lines: Vec3[][] = [];
  for (const latDeg of [-60, -30, 0, 30, 60]) {
    const lat = (latDeg * Math.PI) / 180;
    lines.push(
      circlePoints([1, 0, 0], [0, 1, 0], [0, 0, Math.sin(lat)], Math.cos(lat), segments),
    );
  }
  for (const lonDeg of [0, 45, 90, 135]) {
    const lon = (lonDeg * Math.PI) / 180;
    const u: Vec3 = [Math.cos(lon), Math.sin(lon), 0];
    lines.push(circlePoints(u, [0, 0, 1], [0, 0, 0], 1, segments));
  }
  return lines;
}

const INV_SQRT3 = 1 / Math.sqrt(3);

// vertex k is the |k> basis state of the two-qubit probability embedding
export const TETRA_VERTICES: readonly Vec3[] = [
  [INV_SQRT3, INV_SQRT3, INV_SQRT3],
  [INV_SQRT3, -INV_SQRT3, -INV_SQRT3],
  [-INV_SQRT3, INV_SQRT3, -INV_SQRT3],
  [-INV_SQRT3, -INV_SQRT3, INV_SQRT3],
];

export const TETRA_EDGES: readonly (readonly [number, number])[] = [
  [0, 1],
  [0, 2],
  [0, 3],
  [1, 2],
  [1, 3],
  [2, 3],
];

// the two opposite edges whose midpoints hold the maximally entangled
// states; panels draw them highlighted
export const BELL_EDGES: readonly (readonly [number, number])[] = [
  [0, 3],
  [1, 2],
];

export function edgeMidpoint(edge: readonly [number, number]): Vec3 {
  const a = TETRA_VERTICES[edge[0]];
  const b = TETRA_VERTICES[edge[1]];
  return [(a[0] + b[0]) / 2, (a[1] + b[1]) / 2, (a[2] + b[2]) / 2];
}
