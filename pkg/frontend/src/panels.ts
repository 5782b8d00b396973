import {
  BELL_EDGES,
  Camera,
  defaultCamera,
  depthOrder,
  edgeMidpoint,
  orbit,
  project,
  Projected,
  sphereWireframe,
  TETRA_EDGES,
  TETRA_VERTICES,
  Vec3,
  zoom,
} from "./geometry3d.js";
import { classColor, CORRECT_OUTLINE, MISCLASSIFIED_OUTLINE } from "./colors.js";
import type { ClassSummary, FramePoint } from "./types.js";

export interface PanelHover {
  point: FramePoint;
  cloudIndex: number;
}

export type PanelKind = "sphere" | "tetra";

const DRAG_SPEED = 0.011;
const HIT_RADIUS = 9;

/**
 * Disc radius before perspective scaling. Two-qubit clouds grow with the
 * point's entanglement measure; one-qubit points are uniform.
 */
export function pointRadius(kind: PanelKind, size: number): number {
  return kind === "tetra" ? 1.8 + 3.6 * size : 3.2;
}

/**
 * One 3D view of a state cloud: the Bloch sphere for one qubit or the
 * probability tetrahedron for two. Dragging orbits the camera (local state,
 * no server traffic), the wheel zooms, and hovering near a point reports it
 * for the shared tooltip.
 */
export class StatePanel {
  readonly root: HTMLElement;
  camera: Camera = defaultCamera();
  onHover: (hover: PanelHover | null, clientX: number, clientY: number) => void = () => {};

  private readonly canvas: HTMLCanvasElement;
  private readonly ctx: CanvasRenderingContext2D;
  private points: FramePoint[] = [];
  private targets: ClassSummary[] = [];
  private projected: Projected[] = [];
  private dragging = false;
  private lastX = 0;
  private lastY = 0;

  constructor(
    container: HTMLElement,
    title: string,
    private readonly kind: PanelKind,
    size = 190,
  ) {
    this.root = document.createElement("div");
    this.root.className = "state-panel";
    const head = document.createElement("div");
    head.className = "panel-title";
    head.textContent = title;
    this.root.appendChild(head);

    this.canvas = document.createElement("canvas");
    this.canvas.width = size;
    this.canvas.height = size;
    this.ctx = this.canvas.getContext("2d")!;
    this.root.appendChild(this.canvas);
    container.appendChild(this.root);

    this.canvas.addEventListener("pointerdown", (ev) => {
      this.dragging = true;
      this.lastX = ev.clientX;
      this.lastY = ev.clientY;
      this.canvas.setPointerCapture(ev.pointerId);
    });
    this.canvas.addEventListener("pointerup", (ev) => {
      this.dragging = false;
      this.canvas.releasePointerCapture(ev.pointerId);
    });
    this.canvas.addEventListener("pointermove", (ev) => {
      if (this.dragging) {
        this.camera = orbit(
          this.camera,
          (ev.clientX - this.lastX) * DRAG_SPEED,
          (ev.clientY - this.lastY) * DRAG_SPEED,
        );
        this.lastX = ev.clientX;
        this.lastY = ev.clientY;
        this.draw();
        this.onHover(null, 0, 0);
        return;
      }
      const hit = this.hitTest(ev);
      this.onHover(hit, ev.clientX, ev.clientY);
    });
    this.canvas.addEventListener("pointerleave", () => this.onHover(null, 0, 0));
    this.canvas.addEventListener(
      "wheel",
      (ev) => {
        ev.preventDefault();
        this.camera = zoom(this.camera, Math.exp(ev.deltaY * 0.001));
        this.draw();
      },
      { passive: false },
    );
  }

  setTitle(title: string): void {
    (this.root.firstChild as HTMLElement).textContent = title;
  }

  render(points: FramePoint[], targets: ClassSummary[]): void {
    this.points = points;
    this.targets = targets;
    this.draw();
  }

  private hitTest(ev: PointerEvent): PanelHover | null {
    const rect = this.canvas.getBoundingClientRect();
    const px = ((ev.clientX - rect.left) / rect.width) * this.canvas.width;
    const py = ((ev.clientY - rect.top) / rect.height) * this.canvas.height;
    let best = -1;
    let bestDist = HIT_RADIUS * HIT_RADIUS;
    for (let i = 0; i < this.projected.length; i++) {
      const p = this.projected[i];
      const d = (p.x - px) ** 2 + (p.y - py) ** 2;
      if (d < bestDist) {
        bestDist = d;
        best = i;
      }
    }
    if (best < 0) return null;
    return { point: this.points[best], cloudIndex: best };
  }

  private proj(p: Vec3): Projected {
    const radiusPx = this.canvas.width * 0.37;
    return project(p, this.camera, this.canvas.width, this.canvas.height, radiusPx);
  }

  private polyline(pts: readonly Vec3[], style: string, width: number): void {
    const { ctx } = this;
    ctx.strokeStyle = style;
    ctx.lineWidth = width;
    ctx.beginPath();
    pts.forEach((v, i) => {
      const q = this.proj(v);
      if (i === 0) ctx.moveTo(q.x, q.y);
      else ctx.lineTo(q.x, q.y);
    });
    ctx.stroke();
  }

  private drawSphereFrame(): void {
    for (const line of sphereWireframe()) {
      this.polyline(line, "rgba(120, 130, 150, 0.25)", 1);
    }
    const top = this.proj([0, 0, 1.12]);
    const bottom = this.proj([0, 0, -1.14]);
    this.ctx.fillStyle = "#778";
    this.ctx.font = "10px system-ui, sans-serif";
    this.ctx.fillText("|0⟩", top.x - 6, top.y);
    this.ctx.fillText("|1⟩", bottom.x - 6, bottom.y);
  }

  private drawTetraFrame(): void {
    const isBell = (a: number, b: number) =>
      BELL_EDGES.some(([u, v]) => (u === a && v === b) || (u === b && v === a));
    for (const [a, b] of TETRA_EDGES) {
      this.polyline(
        [TETRA_VERTICES[a], TETRA_VERTICES[b]],
        isBell(a, b) ? "rgba(220, 120, 30, 0.75)" : "rgba(120, 130, 150, 0.35)",
        isBell(a, b) ? 2 : 1,
      );
    }
    // midpoints of the highlighted edges hold the maximally entangled states
    this.ctx.fillStyle = "rgba(220, 120, 30, 0.9)";
    for (const edge of BELL_EDGES) {
      const m = this.proj(edgeMidpoint(edge));
      this.ctx.beginPath();
      this.ctx.arc(m.x, m.y, 2.5, 0, 2 * Math.PI);
      this.ctx.fill();
    }
    this.ctx.font = "10px system-ui, sans-serif";
    TETRA_VERTICES.forEach((v, k) => {
      const q = this.proj([v[0] * 1.18, v[1] * 1.18, v[2] * 1.18]);
      this.ctx.fillStyle = classColor(k);
      this.ctx.fillText(`|${k.toString(2).padStart(2, "0")}⟩`, q.x - 8, q.y + 3);
    });
  }

  private draw(): void {
    const { ctx, canvas } = this;
    ctx.clearRect(0, 0, canvas.width, canvas.height);
    if (this.kind === "sphere") this.drawSphereFrame();
    else this.drawTetraFrame();

    for (const t of this.targets) {
      const q = this.proj(t.target_xyz);
      ctx.beginPath();
      ctx.arc(q.x, q.y, 5.5, 0, 2 * Math.PI);
      ctx.strokeStyle = classColor(t.label);
      ctx.lineWidth = 2;
      ctx.stroke();
    }

    this.projected = this.points.map((p) => this.proj(p.xyz));
    const order = depthOrder(this.projected.map((q) => q.depth));
    for (const i of order) {
      const p = this.points[i];
      const q = this.projected[i];
      const radius = pointRadius(this.kind, p.size);
      ctx.beginPath();
      ctx.arc(q.x, q.y, radius * q.scale, 0, 2 * Math.PI);
      ctx.fillStyle = classColor(p.label);
      ctx.globalAlpha = 0.55 + 0.45 * Math.min(1, Math.max(0, 1 - q.depth));
      ctx.fill();
      ctx.globalAlpha = 1;
      ctx.lineWidth = p.correct ? 0.6 : 1.6;
      ctx.strokeStyle = p.correct ? CORRECT_OUTLINE : MISCLASSIFIED_OUTLINE;
      ctx.stroke();
    }
  }
}
