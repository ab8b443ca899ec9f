/**
 * Editor session state.
 *
 * All rule logic lives server-side; the session performs only cheap local
 * pre-checks (placement overlap, crossing a marked edge) for instant
 * feedback. Every displayed verdict is the literal last server response
 * for the current document version: requests carry the version they were
 * issued for and stale replies are dropped.
 */

import {
  CalissonRef,
  EdgeRef,
  TriangleRef,
  boundaryTriangles,
  calissonOver,
  calissonTriangles,
  edgeKey,
  hexagonTriangles,
  interiorEdges,
  sharedEdge,
  triKey,
} from './geometry.js';
import type {
  CheckResponse,
  EngineApi,
  GraphDump,
  PuzzleDocument,
  SolveResponse,
  TilingItem,
  ViolationItem,
  WitnessItem,
} from './api.js';
import { calissonToWire, documentEdge as toWireEdge } from './api.js';

export type Badge = 'unknown' | 'checking' | 'solvable' | 'unsolvable';

export interface RevealState {
  lowest?: TilingItem[];
  highest?: TilingItem[];
  hint?: TilingItem[];
}

export interface EditorState {
  document: PuzzleDocument;
  version: number;
  placed: CalissonRef[];
  badge: Badge;
  badgeVersion: number;
  violations: ViolationItem[];
  witness: WitnessItem | null;
  graph: GraphDump | null;
  solved: boolean;
  reveal: RevealState;
  showGraph: boolean;
  lastRejection: string | null;
}

type Scheduler = (fn: () => void, ms: number) => void;

const defaultScheduler: Scheduler = (fn, ms) => {
  setTimeout(fn, ms);
};

export class PuzzleSession {
  private state: EditorState;
  private triangles: Map<string, TriangleRef>;
  private interior: Set<string>;
  private pendingSolve = false;
  private listeners: ((s: EditorState) => void)[] = [];
  /** resolves when no solve/check request is in flight (test hook) */
  private settled: Promise<void> = Promise.resolve();

  constructor(
    private api: EngineApi,
    document: PuzzleDocument,
    private options: { debounceMs?: number; scheduler?: Scheduler } = {},
  ) {
    this.state = {
      document: structuredClone(document),
      version: 0,
      placed: [],
      badge: 'unknown',
      badgeVersion: -1,
      violations: [],
      witness: null,
      graph: null,
      solved: false,
      reveal: {},
      showGraph: false,
      lastRejection: null,
    };
    const tris = regionTriangles(document);
    this.triangles = new Map(tris.map((t) => [triKey(t), t]));
    this.interior = new Set(interiorEdges(tris).map(edgeKey));
  }

  get current(): EditorState {
    return this.state;
  }

  subscribe(listener: (s: EditorState) => void): void {
    this.listeners.push(listener);
  }

  private emit(): void {
    for (const l of this.listeners) l(this.state);
  }

  /** Test hook: wait until every in-flight request has been applied. */
  async idle(): Promise<void> {
    let last;
    do {
      last = this.settled;
      await last;
    } while (last !== this.settled);
  }

  exportDocument(): PuzzleDocument {
    return structuredClone(this.state.document);
  }

  importDocument(doc: PuzzleDocument): void {
    const session = new PuzzleSession(this.api, doc, this.options);
    this.state = session.state;
    this.triangles = session.triangles;
    this.interior = session.interior;
    this.scheduleSolve();
    this.emit();
  }

  // -- constrained edges ------------------------------------------------

  toggleConstraintEdge(edge: EdgeRef): boolean {
    this.state.lastRejection = null;
    if (!this.isInfinite() && !this.interior.has(edgeKey(edge))) {
      this.state.lastRejection =
        'constrained edges must lie strictly inside the region';
      this.emit();
      return false;
    }
    const wire = toWireEdge(edge);
    const edges = this.state.document.edges;
    const idx = edges.findIndex((e) => e.v[0] === wire.v[0] && e.v[1] === wire.v[1] && e.axis === wire.axis);
    if (idx >= 0) {
      edges.splice(idx, 1);
    } else {
      edges.push(wire);
      edges.sort((a, b) =>
        a.v[0] - b.v[0] || a.v[1] - b.v[1] || a.axis.localeCompare(b.axis),
      );
    }
    this.bumpVersion();
    this.scheduleSolve();
    this.emit();
    return true;
  }

  // -- placements --------------------------------------------------------

  placeCalisson(a: TriangleRef, b: TriangleRef): boolean {
    this.state.lastRejection = null;
    const edge = sharedEdge(a, b);
    if (edge === null) {
      this.state.lastRejection = 'pick two adjacent triangles';
      this.emit();
      return false;
    }
    if (!this.triangles.has(triKey(a)) || !this.triangles.has(triKey(b))) {
      this.state.lastRejection = 'both triangles must be inside the region';
      this.emit();
      return false;
    }
    if (this.isMarked(edge)) {
      this.state.lastRejection =
        'a calisson may not overlap a constrained edge';
      this.emit();
      return false;
    }
    const occupied = this.occupiedTriangles();
    if (occupied.has(triKey(a)) || occupied.has(triKey(b))) {
      this.state.lastRejection = 'placements may not overlap';
      this.emit();
      return false;
    }
    this.state.placed.push(calissonOver(edge));
    this.scheduleCheck();
    this.emit();
    return true;
  }

  removeCalissonAt(t: TriangleRef): boolean {
    const key = triKey(t);
    const idx = this.state.placed.findIndex((c) =>
      calissonTriangles(c).some((tri) => triKey(tri) === key),
    );
    if (idx < 0) return false;
    this.state.placed.splice(idx, 1);
    this.state.lastRejection = null;
    this.scheduleCheck();
    this.emit();
    return true;
  }

  clearPlacements(): void {
    this.state.placed = [];
    this.state.violations = [];
    this.state.solved = false;
    this.emit();
  }

  private occupiedTriangles(): Set<string> {
    const out = new Set<string>();
    for (const c of this.state.placed) {
      for (const t of calissonTriangles(c)) out.add(triKey(t));
    }
    return out;
  }

  private isMarked(edge: EdgeRef): boolean {
    return this.state.document.edges.some(
      (e) => e.v[0] === edge.v[0] && e.v[1] === edge.v[1] && e.axis === edge.axis,
    );
  }

  // -- reveal -------------------------------------------------------------

  async reveal(which: 'lowest' | 'highest' | 'hint'): Promise<boolean> {
    if (this.state.badge === 'unsolvable') {
      this.state.lastRejection = 'nothing to reveal: the puzzle has no solution';
      this.emit();
      return false;
    }
    if (which === 'hint') {
      const extremes = await this.api.extremes(this.exportDocument());
      if (extremes.verdict !== 'tilable' || !extremes.min || !extremes.max) {
        this.state.lastRejection = 'nothing to reveal: the region is untilable';
        this.emit();
        return false;
      }
      const maxKeys = new Set(extremes.max.map(tileKey));
      const shared = extremes.min.filter((t) => maxKeys.has(tileKey(t)));
      // forced wherever the two extreme surfaces coincide
      this.state.reveal.hint = shared.length ? [shared[0]] : [];
      this.emit();
      return shared.length > 0;
    }
    const response = await this.api.solve(this.exportDocument(), which);
    if (response.verdict !== 'solvable' || !response.tiling) {
      this.state.lastRejection = 'nothing to reveal: the puzzle has no solution';
      this.emit();
      return false;
    }
    this.state.reveal[which] = response.tiling;
    this.emit();
    return true;
  }

  toggleGraphOverlay(): void {
    this.state.showGraph = !this.state.showGraph;
    this.emit();
  }

  // -- server round trips ---------------------------------------------

  private isInfinite(): boolean {
    return this.state.document.region.type === 'infinite';
  }

  private bumpVersion(): void {
    this.state.version += 1;
    this.state.badge = 'checking';
    this.state.reveal = {};
    this.state.witness = null;
  }

  private scheduleSolve(): void {
    if (this.pendingSolve) return;
    this.pendingSolve = true;
    const scheduler = this.options.scheduler ?? defaultScheduler;
    const run = () => {
      this.pendingSolve = false;
      const version = this.state.version;
      const doc = this.exportDocument();
      const request = this.isInfinite() ? this.api.decide(doc) : this.api.solve(doc);
      this.settled = this.settled
        .then(() => request)
        .then((response: SolveResponse) => {
          if (version !== this.state.version) return; // stale reply
          this.state.badge = response.verdict;
          this.state.badgeVersion = version;
          this.state.witness = response.witness ?? null;
          this.state.graph = response.projected_graph ?? null;
          this.emit();
        })
        .catch(() => {
          if (version === this.state.version) {
            this.state.badge = 'unknown';
            this.emit();
          }
        });
    };
    scheduler(run, this.options.debounceMs ?? 150);
  }

  private scheduleCheck(): void {
    const version = this.state.version;
    const placedCount = this.state.placed.length;
    const doc = this.exportDocument();
    const tiling = this.state.placed.map(calissonToWire);
    this.settled = this.settled
      .then(() => this.api.check(doc, tiling))
      .then((response: CheckResponse) => {
        if (version !== this.state.version || placedCount !== this.state.placed.length) {
          return; // stale: the board changed while we were away
        }
        this.state.violations = response.violations;
        this.state.solved = response.verdict === 'valid';
        this.emit();
      })
      .catch(() => undefined);
  }
}

function tileKey(t: TilingItem): string {
  return `${t.cube[0]},${t.cube[1]},${t.cube[2]},${t.normal}`;
}

export function regionTriangles(doc: PuzzleDocument): TriangleRef[] {
  const region = doc.region;
  if (region.type === 'hexagon') return hexagonTriangles(region.n ?? 1);
  if (region.type === 'boundary') {
    return boundaryTriangles(region.start ?? [0, 0], region.steps ?? []);
  }
  return [];
}
