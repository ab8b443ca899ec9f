import { describe, expect, it } from 'vitest';

import type {
  CheckResponse,
  EngineApi,
  ExtremesResponse,
  PuzzleDocument,
  SolveResponse,
  TilingItem,
} from '../src/api.js';
import { PuzzleSession } from '../src/state.js';

/** Scriptable fake engine: records calls, answers from queues. */
class FakeEngine implements EngineApi {
  solveCalls: PuzzleDocument[] = [];
  checkCalls: { doc: PuzzleDocument; tiling: TilingItem[] }[] = [];
  solveQueue: (SolveResponse | (() => Promise<SolveResponse>))[] = [];
  checkQueue: CheckResponse[] = [];
  extremesResponse: ExtremesResponse = { verdict: 'untilable' };

  async solve(doc: PuzzleDocument): Promise<SolveResponse> {
    this.solveCalls.push(structuredClone(doc));
    const next = this.solveQueue.shift() ?? { verdict: 'solvable' as const, tiling: [] };
    return typeof next === 'function' ? next() : next;
  }

  async decide(doc: PuzzleDocument): Promise<SolveResponse> {
    return this.solve(doc);
  }

  async check(doc: PuzzleDocument, tiling: TilingItem[]): Promise<CheckResponse> {
    this.checkCalls.push({ doc: structuredClone(doc), tiling });
    return this.checkQueue.shift() ?? { verdict: 'invalid', violations: [] };
  }

  async extremes(): Promise<ExtremesResponse> {
    return this.extremesResponse;
  }

  async render(): Promise<string> {
    return '<svg/>';
  }
}

const HEX2: PuzzleDocument = { region: { type: 'hexagon', n: 2 }, edges: [] };

const immediate = (fn: () => void) => fn();

function makeSession(engine: FakeEngine) {
  return new PuzzleSession(engine, HEX2, { debounceMs: 0, scheduler: immediate });
}

describe('constrained edge toggling', () => {
  it('adds and removes edges, re-solving each time', async () => {
    const engine = new FakeEngine();
    engine.solveQueue.push({ verdict: 'unsolvable' }, { verdict: 'solvable', tiling: [] });
    const session = makeSession(engine);
    expect(session.toggleConstraintEdge({ v: [0, 0], axis: 'z' })).toBe(true);
    await session.idle();
    expect(session.current.badge).toBe('unsolvable');
    expect(session.current.document.edges).toHaveLength(1);

    expect(session.toggleConstraintEdge({ v: [0, 0], axis: 'z' })).toBe(true);
    await session.idle();
    expect(session.current.badge).toBe('solvable');
    expect(session.current.document.edges).toHaveLength(0);
    expect(engine.solveCalls).toHaveLength(2);
  });

  it('rejects boundary edges locally with a message', async () => {
    const engine = new FakeEngine();
    const session = makeSession(engine);
    expect(session.toggleConstraintEdge({ v: [2, 0], axis: 'y' })).toBe(false);
    expect(session.current.lastRejection).toMatch(/inside the region/);
    expect(engine.solveCalls).toHaveLength(0);
    expect(session.current.document.edges).toHaveLength(0);
  });

  it('drops stale solve replies by version tag', async () => {
    const engine = new FakeEngine();
    let releaseFirst!: (r: SolveResponse) => void;
    engine.solveQueue.push(
      () => new Promise<SolveResponse>((resolve) => (releaseFirst = resolve)),
      { verdict: 'solvable', tiling: [] },
    );
    const session = makeSession(engine);
    session.toggleConstraintEdge({ v: [0, 0], axis: 'z' });
    // a second toggle bumps the version while the first request hangs
    session.toggleConstraintEdge({ v: [0, 0], axis: 'x' });
    releaseFirst({ verdict: 'unsolvable' });
    await session.idle();
    expect(session.current.badge).toBe('solvable');
    expect(session.current.badgeVersion).toBe(session.current.version);
  });
});

describe('placements', () => {
  it('places a calisson across a free edge and checks it', async () => {
    const engine = new FakeEngine();
    engine.checkQueue.push({
      verdict: 'invalid',
      violations: [{ kind: 'gap', triangle: { anchor: [0, 0], chirality: 'left' } }],
    });
    const session = makeSession(engine);
    const ok = session.placeCalisson(
      { anchor: [0, 0], chirality: 'right' },
      { anchor: [0, 0], chirality: 'left' },
    );
    expect(ok).toBe(true);
    await session.idle();
    expect(engine.checkCalls).toHaveLength(1);
    expect(engine.checkCalls[0].tiling).toHaveLength(1);
    expect(session.current.solved).toBe(false);
    expect(session.current.violations.map((v) => v.kind)).toEqual(['gap']);
  });

  it('refuses local overlaps without calling the engine', () => {
    const engine = new FakeEngine();
    const session = makeSession(engine);
    session.placeCalisson(
      { anchor: [0, 0], chirality: 'right' },
      { anchor: [0, 0], chirality: 'left' },
    );
    const again = session.placeCalisson(
      { anchor: [0, 0], chirality: 'right' },
      { anchor: [1, 0], chirality: 'left' },
    );
    expect(again).toBe(false);
    expect(session.current.lastRejection).toMatch(/overlap/);
    expect(session.current.placed).toHaveLength(1);
  });

  it('refuses placements across a constrained edge', () => {
    const engine = new FakeEngine();
    const session = makeSession(engine);
    session.toggleConstraintEdge({ v: [0, 0], axis: 'z' });
    // the z edge at (0,0) separates right(-1,-1) from left(-1,-1)
    const refused = session.placeCalisson(
      { anchor: [-1, -1], chirality: 'right' },
      { anchor: [-1, -1], chirality: 'left' },
    );
    expect(refused).toBe(false);
    expect(session.current.lastRejection).toMatch(/constrained edge/);
  });

  it('refuses non-adjacent pairs', () => {
    const engine = new FakeEngine();
    const session = makeSession(engine);
    const refused = session.placeCalisson(
      { anchor: [0, 0], chirality: 'right' },
      { anchor: [-2, -2], chirality: 'left' },
    );
    expect(refused).toBe(false);
    expect(session.current.lastRejection).toMatch(/adjacent/);
  });

  it('declares the board solved exactly when check returns empty', async () => {
    const engine = new FakeEngine();
    engine.checkQueue.push({ verdict: 'valid', violations: [] });
    const session = makeSession(engine);
    session.placeCalisson(
      { anchor: [0, 0], chirality: 'right' },
      { anchor: [0, 0], chirality: 'left' },
    );
    await session.idle();
    expect(session.current.solved).toBe(true);
  });

  it('removal frees the triangles again', async () => {
    const engine = new FakeEngine();
    const session = makeSession(engine);
    session.placeCalisson(
      { anchor: [0, 0], chirality: 'right' },
      { anchor: [0, 0], chirality: 'left' },
    );
    expect(session.removeCalissonAt({ anchor: [0, 0], chirality: 'right' })).toBe(true);
    expect(session.current.placed).toHaveLength(0);
    const again = session.placeCalisson(
      { anchor: [0, 0], chirality: 'right' },
      { anchor: [0, 0], chirality: 'left' },
    );
    expect(again).toBe(true);
  });
});

describe('reveal', () => {
  it('is disabled while the badge says unsolvable', async () => {
    const engine = new FakeEngine();
    engine.solveQueue.push({ verdict: 'unsolvable' });
    const session = makeSession(engine);
    session.toggleConstraintEdge({ v: [0, 0], axis: 'z' });
    await session.idle();
    expect(await session.reveal('lowest')).toBe(false);
    expect(session.current.reveal.lowest).toBeUndefined();
  });

  it('stores the lowest solution overlay', async () => {
    const engine = new FakeEngine();
    const tiling: TilingItem[] = [{ cube: [0, 0, 0], normal: 'z' }];
    engine.solveQueue.push({ verdict: 'solvable', tiling: [] });
    engine.solveQueue.push({ verdict: 'solvable', tiling });
    const session = makeSession(engine);
    session.toggleConstraintEdge({ v: [0, 0], axis: 'z' });
    await session.idle();
    expect(await session.reveal('lowest')).toBe(true);
    expect(session.current.reveal.lowest).toEqual(tiling);
  });

  it('hints only where the extremes coincide', async () => {
    const engine = new FakeEngine();
    const shared: TilingItem = { cube: [1, 0, 0], normal: 'x' };
    engine.extremesResponse = {
      verdict: 'tilable',
      min: [shared, { cube: [0, 0, 0], normal: 'y' }],
      max: [shared, { cube: [0, 1, 0], normal: 'y' }],
    };
    const session = makeSession(engine);
    expect(await session.reveal('hint')).toBe(true);
    expect(session.current.reveal.hint).toEqual([shared]);

    engine.extremesResponse = {
      verdict: 'tilable',
      min: [{ cube: [0, 0, 0], normal: 'y' }],
      max: [{ cube: [0, 1, 0], normal: 'y' }],
    };
    expect(await session.reveal('hint')).toBe(false);
    expect(session.current.reveal.hint).toEqual([]);
  });
});

describe('document round trip', () => {
  it('export and import preserve the constraint set', async () => {
    const engine = new FakeEngine();
    const session = makeSession(engine);
    session.toggleConstraintEdge({ v: [0, 0], axis: 'z' });
    session.toggleConstraintEdge({ v: [1, 0], axis: 'x' });
    const exported = session.exportDocument();

    const other = makeSession(new FakeEngine());
    other.importDocument(exported);
    expect(other.exportDocument()).toEqual(exported);
    expect(other.current.document.edges).toHaveLength(2);
  });

  it('export is a deep copy', () => {
    const engine = new FakeEngine();
    const session = makeSession(engine);
    const exported = session.exportDocument();
    exported.edges.push({ v: [0, 0], axis: 'z' });
    expect(session.current.document.edges).toHaveLength(0);
  });
});
