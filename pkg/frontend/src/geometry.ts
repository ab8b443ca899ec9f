/**
 * Client-side mirror of the engine's grid geometry, just enough for local
 * pre-checks and native SVG drawing. Canonical coordinates (u, v); axis
 * steps x=(1,0), y=(0,1), z=(-1,-1). All rule logic stays server-side.
 */

export type Axis = 'x' | 'y' | 'z';
export type Pos = readonly [number, number];

export const AXES: Axis[] = ['x', 'y', 'z'];

export const AXIS_STEP: Record<Axis, Pos> = {
  x: [1, 0],
  y: [0, 1],
  z: [-1, -1],
};

export const AXIS_COLOR: Record<Axis, string> = {
  x: '#4a90d9', // blue
  y: '#d9534a', // red
  z: '#e8c74a', // yellow
};

export interface EdgeRef {
  v: Pos;
  axis: Axis;
}

export interface TriangleRef {
  anchor: Pos;
  chirality: 'left' | 'right';
}

export interface CalissonRef {
  cube: readonly [number, number, number];
  normal: Axis;
}

export const posKey = (p: Pos): string => `${p[0]},${p[1]}`;
export const edgeKey = (e: EdgeRef): string => `${e.v[0]},${e.v[1]},${e.axis}`;
export const triKey = (t: TriangleRef): string =>
  `${t.anchor[0]},${t.anchor[1]},${t.chirality}`;

export function edgeHead(e: EdgeRef): Pos {
  const [du, dv] = AXIS_STEP[e.axis];
  return [e.v[0] + du, e.v[1] + dv];
}

export function triangleCorners(t: TriangleRef): Pos[] {
  const [u, v] = t.anchor;
  return t.chirality === 'right'
    ? [
        [u, v],
        [u + 1, v],
        [u + 1, v + 1],
      ]
    : [
        [u, v],
        [u, v + 1],
        [u + 1, v + 1],
      ];
}

export function triangleEdges(t: TriangleRef): EdgeRef[] {
  const corners = triangleCorners(t);
  const out: EdgeRef[] = [];
  for (let i = 0; i < 3; i++) {
    out.push(edgeBetween(corners[i], corners[(i + 1) % 3]));
  }
  return out;
}

export function edgeBetween(a: Pos, b: Pos): EdgeRef {
  const delta: Pos = [b[0] - a[0], b[1] - a[1]];
  for (const axis of AXES) {
    const [du, dv] = AXIS_STEP[axis];
    if (delta[0] === du && delta[1] === dv) return { v: a, axis };
    if (delta[0] === -du && delta[1] === -dv) return { v: b, axis };
  }
  throw new Error(`vertices ${posKey(a)} and ${posKey(b)} are not adjacent`);
}

/** The two triangles flanking an edge: [left of +axis travel, right]. */
export function edgeFlanks(e: EdgeRef): [TriangleRef, TriangleRef] {
  const [u, v] = e.v;
  switch (e.axis) {
    case 'x':
      return [
        { anchor: [u, v], chirality: 'right' },
        { anchor: [u, v - 1], chirality: 'left' },
      ];
    case 'y':
      return [
        { anchor: [u - 1, v], chirality: 'right' },
        { anchor: [u, v], chirality: 'left' },
      ];
    case 'z':
      return [
        { anchor: [u - 1, v - 1], chirality: 'right' },
        { anchor: [u - 1, v - 1], chirality: 'left' },
      ];
  }
}

/** Shared edge of two adjacent triangles, or null when not adjacent. */
export function sharedEdge(a: TriangleRef, b: TriangleRef): EdgeRef | null {
  const bEdges = new Set(b ? triangleEdges(b).map(edgeKey) : []);
  for (const e of triangleEdges(a)) {
    if (bEdges.has(edgeKey(e))) return e;
  }
  return null;
}

/**
 * Calisson overlapping an edge, lifted at the canonical level (k = 0);
 * only the footprint matters to the checker.
 */
export function calissonOver(e: EdgeRef): CalissonRef {
  const plus = edgeHead(e);
  return { cube: [plus[0], plus[1], 0], normal: e.axis };
}

export function calissonDiagonal(c: CalissonRef): EdgeRef {
  const plus: Pos = [c.cube[0] - c.cube[2], c.cube[1] - c.cube[2]];
  const [du, dv] = AXIS_STEP[c.normal];
  return { v: [plus[0] - du, plus[1] - dv], axis: c.normal };
}

export function calissonTriangles(c: CalissonRef): [TriangleRef, TriangleRef] {
  return edgeFlanks(calissonDiagonal(c));
}

export function calissonCorners(c: CalissonRef): Pos[] {
  const plus: Pos = [c.cube[0] - c.cube[2], c.cube[1] - c.cube[2]];
  const others = AXES.filter((a) => a !== c.normal);
  const [da, db] = [AXIS_STEP[others[0]], AXIS_STEP[others[1]]];
  return [
    plus,
    [plus[0] + da[0], plus[1] + da[1]],
    [plus[0] + da[0] + db[0], plus[1] + da[1] + db[1]],
    [plus[0] + db[0], plus[1] + db[1]],
  ];
}

/** Screen embedding: x = (u-v)*sqrt(3)/2, y = (u+v)/2, y axis down. */
export function toScreen(p: Pos): readonly [number, number] {
  return [((p[0] - p[1]) * Math.sqrt(3)) / 2, (p[0] + p[1]) / 2];
}

/** Triangle set of a hexagon document, for native drawing and hit tests. */
export function hexagonTriangles(n: number): TriangleRef[] {
  const out: TriangleRef[] = [];
  const inside = (u: number, v: number) =>
    Math.abs(u) <= n && Math.abs(v) <= n && Math.abs(u - v) <= n;
  for (let u = -n; u <= n; u++) {
    for (let v = -n; v <= n; v++) {
      for (const chirality of ['right', 'left'] as const) {
        const t: TriangleRef = { anchor: [u, v], chirality };
        if (triangleCorners(t).every(([cu, cv]) => inside(cu, cv))) out.push(t);
      }
    }
  }
  return out;
}

/** Triangles enclosed by an explicit boundary contour (winding test). */
export function boundaryTriangles(start: Pos, steps: string[]): TriangleRef[] {
  const positions: Pos[] = [start];
  for (const s of steps) {
    const sign = s[0] === '+' ? 1 : -1;
    const [du, dv] = AXIS_STEP[s[1] as Axis];
    const [u, v] = positions[positions.length - 1];
    positions.push([u + sign * du, v + sign * dv]);
  }
  const us = positions.map((p) => p[0]);
  const vs = positions.map((p) => p[1]);
  const out: TriangleRef[] = [];
  for (let u = Math.min(...us) - 1; u <= Math.max(...us); u++) {
    for (let v = Math.min(...vs) - 1; v <= Math.max(...vs); v++) {
      for (const chirality of ['right', 'left'] as const) {
        const t: TriangleRef = { anchor: [u, v], chirality };
        if (windingNumber(positions, t) === 1) out.push(t);
      }
    }
  }
  return out;
}

function windingNumber(positions: Pos[], t: TriangleRef): number {
  const corners = triangleCorners(t);
  const su = corners.reduce((acc, c) => acc + c[0], 0); // 3 * centroid
  const sv = corners.reduce((acc, c) => acc + c[1], 0);
  let winding = 0;
  for (let i = 0; i + 1 < positions.length; i++) {
    const [au, av] = positions[i];
    const [bu, bv] = positions[i + 1];
    const dv = bv - av;
    if (dv === 0) continue;
    const [lo, hi] = dv > 0 ? [3 * av, 3 * bv] : [3 * bv, 3 * av];
    if (!(lo < sv && sv < hi)) continue;
    const cross3 = au === bu ? 3 * au : 3 * au + (sv - 3 * av);
    if (cross3 > su) winding += dv > 0 ? 1 : -1;
  }
  return winding;
}

/** Interior edges of a triangle set (flanked on both sides). */
export function interiorEdges(triangles: TriangleRef[]): EdgeRef[] {
  const have = new Set(triangles.map(triKey));
  const seen = new Map<string, EdgeRef>();
  for (const t of triangles) {
    for (const e of triangleEdges(t)) {
      const [fl, fr] = edgeFlanks(e);
      if (have.has(triKey(fl)) && have.has(triKey(fr))) seen.set(edgeKey(e), e);
    }
  }
  return [...seen.values()].sort((a, b) => edgeKey(a).localeCompare(edgeKey(b)));
}
