/**
 * SVG editor bound to a PuzzleSession: click an interior edge to toggle a
 * constraint, click two adjacent free triangles to place a calisson, click
 * a placement to remove it. The status badge and the violation highlights
 * mirror the last server response verbatim.
 */

import {
  AXIS_COLOR,
  EdgeRef,
  Pos,
  TriangleRef,
  calissonCorners,
  calissonDiagonal,
  edgeFlanks,
  edgeHead,
  edgeKey,
  toScreen,
  triKey,
  triangleCorners,
} from './geometry.js';
import type { EditorState, PuzzleSession } from './state.js';
import { regionTriangles } from './state.js';
import type { TilingItem, ViolationItem } from './api.js';

const SVG_NS = 'http://www.w3.org/2000/svg';

export class PuzzleEditor {
  private svg: SVGSVGElement;
  private badgeEl: HTMLElement;
  private messageEl: HTMLElement;
  private pendingTriangle: TriangleRef | null = null;

  constructor(
    private container: HTMLElement,
    private session: PuzzleSession,
  ) {
    const toolbar = document.createElement('div');
    toolbar.className = 'toolbar';
    this.badgeEl = document.createElement('span');
    this.badgeEl.className = 'badge';
    toolbar.appendChild(this.badgeEl);
    for (const [label, action] of [
      ['reveal lowest', () => void session.reveal('lowest')],
      ['reveal highest', () => void session.reveal('highest')],
      ['hint', () => void session.reveal('hint')],
      ['clear', () => session.clearPlacements()],
      ['graph overlay', () => session.toggleGraphOverlay()],
      ['export', () => this.export()],
    ] as const) {
      const button = document.createElement('button');
      button.textContent = label;
      button.addEventListener('click', action);
      toolbar.appendChild(button);
    }
    this.messageEl = document.createElement('div');
    this.messageEl.className = 'message';

    this.svg = document.createElementNS(SVG_NS, 'svg') as SVGSVGElement;
    this.svg.setAttribute('width', '720');
    this.svg.setAttribute('height', '640');
    container.append(toolbar, this.svg, this.messageEl);

    session.subscribe((state) => this.render(state));
    this.render(session.current);
  }

  private export(): void {
    const text = JSON.stringify(this.session.exportDocument(), null, 2);
    void navigator.clipboard?.writeText(text);
    this.messageEl.textContent = 'document copied to clipboard';
  }

  private render(state: EditorState): void {
    this.badgeEl.textContent = state.badge;
    this.badgeEl.dataset.state = state.badge;
    this.messageEl.textContent = state.lastRejection ?? (state.solved && state.placed.length ? 'solved!' : '');
    this.svg.replaceChildren();

    const triangles = regionTriangles(state.document);
    if (!triangles.length) {
      this.messageEl.textContent = 'infinite grid: toggle edges and watch the badge';
      return;
    }
    const points = triangles.flatMap((t) => triangleCorners(t).map(toScreen));
    const xs = points.map((p) => p[0]);
    const ys = points.map((p) => p[1]);
    const pad = 0.8;
    this.svg.setAttribute(
      'viewBox',
      `${Math.min(...xs) - pad} ${Math.min(...ys) - pad} ` +
        `${Math.max(...xs) - Math.min(...xs) + 2 * pad} ${Math.max(...ys) - Math.min(...ys) + 2 * pad}`,
    );

    const violationEdges = new Set(
      state.violations
        .filter((v): v is ViolationItem & { edge: NonNullable<ViolationItem['edge']> } => !!v.edge)
        .map((v) => `${v.edge.v[0]},${v.edge.v[1]},${v.edge.axis}`),
    );
    const violationTris = new Set(
      state.violations
        .filter((v) => v.triangle)
        .map((v) => `${v.triangle!.anchor[0]},${v.triangle!.anchor[1]},${v.triangle!.chirality}`),
    );

    // reveal underlay
    const overlayTiling = state.reveal.lowest ?? state.reveal.highest ?? null;
    if (overlayTiling) this.drawTiling(overlayTiling, 0.35);

    // triangles (hit targets)
    for (const tri of triangles) {
      const polygon = document.createElementNS(SVG_NS, 'polygon');
      polygon.setAttribute(
        'points',
        triangleCorners(tri)
          .map((c) => toScreen(c).join(','))
          .join(' '),
      );
      polygon.setAttribute('fill', violationTris.has(triKey(tri)) ? '#ffd4d4' : 'transparent');
      polygon.setAttribute('stroke', 'none');
      polygon.classList.add('triangle');
      if (this.pendingTriangle && triKey(this.pendingTriangle) === triKey(tri)) {
        polygon.setAttribute('fill', '#d0e8ff');
      }
      polygon.addEventListener('click', () => this.onTriangleClick(tri));
      this.svg.appendChild(polygon);
    }

    // placements
    this.drawTiling(state.placed.map((c) => ({ cube: [...c.cube] as [number, number, number], normal: c.normal })), 0.9);
    if (state.reveal.hint?.length) this.drawTiling(state.reveal.hint, 0.6);

    // grid edges
    const drawn = new Set<string>();
    for (const tri of triangles) {
      for (const [a, b] of cornerPairs(tri)) {
        const key = [a, b].map((p) => p.join(',')).sort().join('|');
        if (drawn.has(key)) continue;
        drawn.add(key);
        this.drawEdge(a, b, '#c8c8c8', 0.02);
      }
    }

    // constrained edges, bold; violated ones red
    for (const e of state.document.edges) {
      const edge: EdgeRef = { v: [e.v[0], e.v[1]], axis: e.axis as EdgeRef['axis'] };
      const bad = violationEdges.has(edgeKey(edge));
      this.drawEdge(edge.v, edgeHead(edge), bad ? '#d40000' : '#111111', 0.1);
    }

    // projected-graph overlay: descending and saliency arcs stand out
    if (state.showGraph && state.graph) {
      const tints: Record<string, string> = {
        ascending: '#9fc3ff',
        boundary_rev: '#444444',
        x_rev: '#e06060',
        saliency: '#a07030',
      };
      for (const arc of state.graph.arcs) {
        if (arc.tag === 'ascending') continue; // keep the overlay readable
        this.drawEdge(
          [arc.from[0], arc.from[1]],
          [arc.to[0], arc.to[1]],
          tints[arc.tag] ?? '#888888',
          0.05,
        );
      }
    }

    // invisible fat hit targets for edge toggling
    for (const tri of triangles) {
      for (const [a, b] of cornerPairs(tri)) {
        const line = document.createElementNS(SVG_NS, 'line');
        const [x1, y1] = toScreen(a);
        const [x2, y2] = toScreen(b);
        line.setAttribute('x1', String(x1));
        line.setAttribute('y1', String(y1));
        line.setAttribute('x2', String(x2));
        line.setAttribute('y2', String(y2));
        line.setAttribute('stroke', 'transparent');
        line.setAttribute('stroke-width', '0.16');
        line.addEventListener('click', (event) => {
          event.stopPropagation();
          this.onEdgeClick(a, b);
        });
        this.svg.appendChild(line);
      }
    }
  }

  private drawTiling(tiling: TilingItem[], opacity: number): void {
    for (const item of tiling) {
      const polygon = document.createElementNS(SVG_NS, 'polygon');
      polygon.setAttribute(
        'points',
        calissonCorners({ cube: item.cube, normal: item.normal })
          .map((c) => toScreen(c).join(','))
          .join(' '),
      );
      polygon.setAttribute('fill', AXIS_COLOR[item.normal]);
      polygon.setAttribute('fill-opacity', String(opacity));
      polygon.setAttribute('stroke', '#333');
      polygon.setAttribute('stroke-width', '0.03');
      polygon.addEventListener('click', () => {
        const diag = calissonDiagonal({ cube: item.cube, normal: item.normal });
        this.session.removeCalissonAt(edgeFlanks(diag)[0]);
      });
      this.svg.appendChild(polygon);
    }
  }

  private drawEdge(a: Pos, b: Pos, stroke: string, width: number): void {
    const line = document.createElementNS(SVG_NS, 'line');
    const [x1, y1] = toScreen(a);
    const [x2, y2] = toScreen(b);
    line.setAttribute('x1', String(x1));
    line.setAttribute('y1', String(y1));
    line.setAttribute('x2', String(x2));
    line.setAttribute('y2', String(y2));
    line.setAttribute('stroke', stroke);
    line.setAttribute('stroke-width', String(width));
    line.setAttribute('stroke-linecap', 'round');
    line.setAttribute('pointer-events', 'none');
    this.svg.appendChild(line);
  }

  private onTriangleClick(tri: TriangleRef): void {
    if (this.pendingTriangle === null) {
      this.pendingTriangle = tri;
    } else if (triKey(this.pendingTriangle) === triKey(tri)) {
      this.pendingTriangle = null;
    } else {
      this.session.placeCalisson(this.pendingTriangle, tri);
      this.pendingTriangle = null;
    }
    this.render(this.session.current);
  }

  private onEdgeClick(a: Pos, b: Pos): void {
    this.pendingTriangle = null;
    const delta = [b[0] - a[0], b[1] - a[1]];
    const axis = delta[0] === 1 && delta[1] === 0 ? 'x' : delta[0] === 0 && delta[1] === 1 ? 'y' : 'z';
    const edge: EdgeRef =
      axis === 'z'
        ? { v: a[0] > b[0] ? a : b, axis }
        : { v: delta[0] + delta[1] > 0 ? a : b, axis };
    this.session.toggleConstraintEdge(edge);
  }
}

function cornerPairs(tri: TriangleRef): [Pos, Pos][] {
  const corners = triangleCorners(tri);
  return [
    [corners[0], corners[1]],
    [corners[1], corners[2]],
    [corners[2], corners[0]],
  ];
}
