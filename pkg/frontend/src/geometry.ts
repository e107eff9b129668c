// Integer grid geometry for practice mode and scripted ceremonies. Mirrors
// the verifier's rules exactly (integer cross products, boundary-inclusive
// membership with the interior-first response rule) so that highlighting
// never disagrees with the server about edge cases.

export type Pt = readonly [number, number];

export function cross(o: Pt, a: Pt, b: Pt): number {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

function gcd(a: number, b: number): number {
  a = Math.abs(a);
  b = Math.abs(b);
  while (b) [a, b] = [b, a % b];
  return a;
}

/** Lattice cells strictly between p and q on the real segment. */
export function cellsOnSegment(p: Pt, q: Pt): Pt[] {
  if (p[0] === q[0] && p[1] === q[1]) throw new Error("degenerate segment");
  const g = gcd(q[0] - p[0], q[1] - p[1]);
  const sx = (q[0] - p[0]) / g;
  const sy = (q[1] - p[1]) / g;
  const out: Pt[] = [];
  for (let i = 1; i < g; i++) out.push([p[0] + i * sx, p[1] + i * sy]);
  return out;
}

function inclusiveCells(v: [Pt, Pt, Pt], w: number, h: number): Pt[] {
  const [a, b, c] = v;
  const area2 = cross(a, b, c);
  if (area2 === 0) {
    const sorted = [...v].sort((p, q) => p[0] - q[0] || p[1] - q[1]);
    const lo = sorted[0];
    const hi = sorted[2];
    if (lo[0] === hi[0] && lo[1] === hi[1]) return [lo];
    return [lo, ...cellsOnSegment(lo, hi), hi];
  }
  const out: Pt[] = [];
  const xs = [a[0], b[0], c[0]];
  const ys = [a[1], b[1], c[1]];
  for (let x = Math.max(0, Math.min(...xs)); x <= Math.min(w - 1, Math.max(...xs)); x++) {
    for (let y = Math.max(0, Math.min(...ys)); y <= Math.min(h - 1, Math.max(...ys)); y++) {
      const p: Pt = [x, y];
      const d1 = cross(a, b, p);
      const d2 = cross(b, c, p);
      const d3 = cross(c, a, p);
      const pos = d1 > 0 || d2 > 0 || d3 > 0;
      const neg = d1 < 0 || d2 < 0 || d3 < 0;
      if (!(pos && neg)) out.push(p);
    }
  }
  return out;
}

function interiorCells(v: [Pt, Pt, Pt], w: number, h: number): Pt[] {
  const [a, b, c] = v;
  if (cross(a, b, c) === 0) return [];
  const out: Pt[] = [];
  const xs = [a[0], b[0], c[0]];
  const ys = [a[1], b[1], c[1]];
  for (let x = Math.max(0, Math.min(...xs)); x <= Math.min(w - 1, Math.max(...xs)); x++) {
    for (let y = Math.max(0, Math.min(...ys)); y <= Math.min(h - 1, Math.max(...ys)); y++) {
      const p: Pt = [x, y];
      const d1 = cross(a, b, p);
      const d2 = cross(b, c, p);
      const d3 = cross(c, a, p);
      if ((d1 > 0 && d2 > 0 && d3 > 0) || (d1 < 0 && d2 < 0 && d3 < 0)) out.push(p);
    }
  }
  return out;
}

/**
 * The cells a response may land on for a triangle of password characters:
 * strictly interior cells, or the full boundary-inclusive set when the
 * interior traps none. Identical to the verifier's rule.
 */
export function triangleResponseCells(v: [Pt, Pt, Pt], w: number, h: number): Pt[] {
  const inner = interiorCells(v, w, h);
  return inner.length ? inner : inclusiveCells(v, w, h);
}

/** Monotone-chain convex hull; collinear input degenerates to 1-2 points. */
export function convexHull(points: Pt[]): Pt[] {
  const uniq = Array.from(new Map(points.map((p) => [`${p[0]},${p[1]}`, p])).values())
    .sort((p, q) => p[0] - q[0] || p[1] - q[1]);
  if (uniq.length <= 2) return uniq;
  const lower: Pt[] = [];
  for (const p of uniq) {
    while (lower.length >= 2 && cross(lower[lower.length - 2], lower[lower.length - 1], p) <= 0) {
      lower.pop();
    }
    lower.push(p);
  }
  const upper: Pt[] = [];
  for (const p of [...uniq].reverse()) {
    while (upper.length >= 2 && cross(upper[upper.length - 2], upper[upper.length - 1], p) <= 0) {
      upper.pop();
    }
    upper.push(p);
  }
  return [...lower.slice(0, -1), ...upper.slice(0, -1)];
}

/** Boundary-inclusive membership, handling degenerate hulls. */
export function pointInHull(p: Pt, hull: Pt[]): boolean {
  if (hull.length === 0) return false;
  if (hull.length === 1) return p[0] === hull[0][0] && p[1] === hull[0][1];
  if (hull.length === 2) {
    const [a, b] = hull;
    return (
      cross(a, b, p) === 0 &&
      Math.min(a[0], b[0]) <= p[0] && p[0] <= Math.max(a[0], b[0]) &&
      Math.min(a[1], b[1]) <= p[1] && p[1] <= Math.max(a[1], b[1])
    );
  }
  for (let i = 0; i < hull.length; i++) {
    if (cross(hull[i], hull[(i + 1) % hull.length], p) < 0) return false;
  }
  return true;
}

/** The 3 cyclically consecutive password characters used in a round. */
export function roundWindow(word: string, round: number, size = 3): string {
  let out = "";
  for (let j = 0; j < size; j++) out += word[(round - 1 + j) % word.length];
  return out;
}
