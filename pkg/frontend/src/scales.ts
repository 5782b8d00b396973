// Axis helpers for the metric charts.

export interface Scale {
  domain: [number, number];
  range: [number, number];
  map(v: number): number;
}

export function linearScale(domain: [number, number], range: [number, number]): Scale {
  const [d0, d1] = domain;
  const [r0, r1] = range;
  const span = d1 - d0 || 1;
  return {
    domain,
    range,
    map: (v: number) => r0 + ((v - d0) / span) * (r1 - r0),
  };
}

/** Round a positive span up to 1, 2 or 5 times a power of ten. */
export function niceStep(rawStep: number): number {
  const power = Math.floor(Math.log10(rawStep));
  const base = Math.pow(10, power);
  const m = rawStep / base;
  if (m <= 1) return base;
  if (m <= 2) return 2 * base;
  if (m <= 5) return 5 * base;
  return 10 * base;
}

/** Tick positions covering [lo, hi] at a round step, about `count` of them. */
export function ticks(lo: number, hi: number, count = 5): number[] {
  if (!(hi > lo)) return [lo];
  const step = niceStep((hi - lo) / Math.max(1, count));
  const start = Math.ceil(lo / step) * step;
  const out: number[] = [];
  for (let v = start; v <= hi + step * 1e-9; v += step) {
    // snap away float drift so labels render clean
    out.push(Number(v.toFixed(10)));
  }
  return out;
}

/** Pad a [min, max] extent so lines do not hug the chart border. */
export function padded(lo: number, hi: number, frac = 0.08): [number, number] {
  if (!(hi > lo)) {
    const bump = Math.abs(lo) * frac || 1;
    return [lo - bump, hi + bump];
  }
  const pad = (hi - lo) * frac;
  return [lo - pad, hi + pad];
}
