// Minimal 3D math for the state panels: an orbit camera around the origin
// plus wireframe polylines for the unit sphere and the probability
// tetrahedron. Everything here is pure so it can be unit tested; canvas
// drawing lives in panels.ts.
export const PITCH_LIMIT = 1.45;
export const DISTANCE_RANGE = [2.0, 12.0];
export function defaultCamera() {
    return { yaw: -0.5, pitch: 0.35, distance: 4.0 };
}
export function orbit(cam, dYaw, dPitch) {
    const pitch = Math.min(PITCH_LIMIT, Math.max(-PITCH_LIMIT, cam.pitch + dPitch));
    return { ...cam, yaw: cam.yaw + dYaw, pitch };
}
export function zoom(cam, factor) {
    const [lo, hi] = DISTANCE_RANGE;
    const distance = Math.min(hi, Math.max(lo, cam.distance * factor));
    return { ...cam, distance };
}
/**
 * Project a scene point to canvas coordinates.
 *
 * The world z axis maps to screen up. Yaw spins the scene about z, pitch
 * tips it toward the viewer, and a mild perspective divide by the eye
 * distance keeps nearer points slightly larger.
 */
export function project(p, cam, width, height, radiusPx) {
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
export function depthOrder(depths) {
    const idx = depths.map((_, i) => i);
    idx.sort((a, b) => depths[b] - depths[a]);
    return idx;
}
function circlePoints(axisU, axisV, center, radius, segments) {
    const pts = [];
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
export function sphereWireframe(segments = 48) {
    const lines = [];
    for (const latDeg of [-60, -30, 0, 30, 60]) {
        const lat = (latDeg * Math.PI) / 180;
        lines.push(circlePoints([1, 0, 0], [0, 1, 0], [0, 0, Math.sin(lat)], Math.cos(lat), segments));
    }
    for (const lonDeg of [0, 45, 90, 135]) {
        const lon = (lonDeg * Math.PI) / 180;
        const u = [Math.cos(lon), Math.sin(lon), 0];
        lines.push(circlePoints(u, [0, 0, 1], [0, 0, 0], 1, segments));
    }
    return lines;
}
const INV_SQRT3 = 1 / Math.sqrt(3);
// vertex k is the |k> basis state of the two-qubit probability embedding
export const TETRA_VERTICES = [
    [INV_SQRT3, INV_SQRT3, INV_SQRT3],
    [INV_SQRT3, -INV_SQRT3, -INV_SQRT3],
    [-INV_SQRT3, INV_SQRT3, -INV_SQRT3],
    [-INV_SQRT3, -INV_SQRT3, INV_SQRT3],
];
export const TETRA_EDGES = [
    [0, 1],
    [0, 2],
    [0, 3],
    [1, 2],
    [1, 3],
    [2, 3],
];
// the two opposite edges whose midpoints hold the maximally entangled
// states; panels draw them highlighted
export const BELL_EDGES = [
    [0, 3],
    [1, 2],
];
export function edgeMidpoint(edge) {
    const a = TETRA_VERTICES[edge[0]];
    const b = TETRA_VERTICES[edge[1]];
    return [(a[0] + b[0]) / 2, (a[1] + b[1]) / 2, (a[2] + b[2]) / 2];
}
