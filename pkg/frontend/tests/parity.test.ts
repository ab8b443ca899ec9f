/**
 * UI parity against the real engine: a scripted session (toggle 10 edges,
 * place 5 calissons, reveal lowest) where every displayed verdict and
 * violation list is compared with the CLI run on the exported document.
 *
 * Spawns the Python HTTP service; skips when the engine is not available.
 */

import { spawn, spawnSync } from 'node:child_process';
import { mkdtempSync, writeFileSync } from 'node:fs';
import { tmpdir } from 'node:os';
import { join } from 'node:path';
import { afterAll, beforeAll, describe, expect, it } from 'vitest';

import { HttpEngineApi, PuzzleDocument, TilingItem } from '../src/api.js';
import { PuzzleSession } from '../src/state.js';
import type { EdgeRef, TriangleRef } from '../src/geometry.js';

const PORT = 8899;
const BASE = `http://127.0.0.1:${PORT}`;
const PYTHON = process.env.CALISSONS_PYTHON ?? 'python3';

const engineAvailable =
  spawnSync(PYTHON, ['-c', 'import calissons'], { timeout: 20000 }).status === 0;

let server: ReturnType<typeof spawn> | null = null;
const workDir = mkdtempSync(join(tmpdir(), 'calissons-parity-'));

async function waitForServer(): Promise<void> {
  for (let attempt = 0; attempt < 60; attempt++) {
    try {
      const response = await fetch(`${BASE}/solve`, {
        method: 'POST',
        headers: { 'content-type': 'application/json' },
        body: JSON.stringify({ document: { region: { type: 'hexagon', n: 1 }, edges: [] } }),
      });
      if (response.ok) return;
    } catch {
      /* not up yet */
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error('engine service did not come up');
}

function cliJson(args: string[], payload: unknown, name: string): any {
  const path = join(workDir, name);
  writeFileSync(path, JSON.stringify(payload));
  const proc = spawnSync(PYTHON, ['-m', 'calissons', ...args, path], {
    timeout: 60000,
    encoding: 'utf-8',
  });
  return { status: proc.status, body: JSON.parse(proc.stdout) };
}

function cliSolve(doc: PuzzleDocument, step: number) {
  return cliJson(['solve'], doc, `doc${step}.json`);
}

function cliCheck(doc: PuzzleDocument, tiling: TilingItem[], step: number) {
  const docPath = join(workDir, `chk-doc${step}.json`);
  const tilingPath = join(workDir, `chk-tiling${step}.json`);
  writeFileSync(docPath, JSON.stringify(doc));
  writeFileSync(tilingPath, JSON.stringify(tiling));
  const proc = spawnSync(PYTHON, ['-m', 'calissons', 'check', docPath, tilingPath], {
    timeout: 60000,
    encoding: 'utf-8',
  });
  return JSON.parse(proc.stdout);
}

describe.skipIf(!engineAvailable)('scripted session parity with the CLI', () => {
  beforeAll(async () => {
    server = spawn(PYTHON, ['-m', 'calissons', 'serve', '--port', String(PORT)], {
      stdio: 'ignore',
    });
    await waitForServer();
  }, 40000);

  afterAll(() => {
    server?.kill();
  });

  it('keeps every displayed verdict equal to the CLI verdict', async () => {
    const api = new HttpEngineApi(BASE);
    const session = new PuzzleSession(
      api,
      { region: { type: 'hexagon', n: 3 }, edges: [] },
      { debounceMs: 0, scheduler: (fn) => fn() },
    );

    const togglePlan: EdgeRef[] = [
      { v: [0, 0], axis: 'z' },
      { v: [1, 0], axis: 'x' },
      { v: [-1, -1], axis: 'y' },
      { v: [0, 1], axis: 'y' },
      { v: [1, 1], axis: 'z' },
      { v: [-1, 0], axis: 'x' },
      { v: [0, -1], axis: 'x' },
      { v: [1, 2], axis: 'y' },
      { v: [0, 0], axis: 'z' }, // toggles the first edge back off
      { v: [-2, -2], axis: 'x' },
    ];
    let verdictsSeen: string[] = [];
    for (const [i, edge] of togglePlan.entries()) {
      expect(session.toggleConstraintEdge(edge)).toBe(true);
      await session.idle();
      const badge = session.current.badge;
      const cli = cliSolve(session.exportDocument(), i);
      expect(badge).toBe(cli.body.verdict);
      expect(session.current.badgeVersion).toBe(session.current.version);
      verdictsSeen.push(badge);
    }
    // the scripted plan must exercise both verdicts to mean anything
    expect(new Set(verdictsSeen).size).toBeGreaterThan(1);

    // this pair straddles the marked edge from toggle step 10: the
    // session must refuse it locally without consulting the engine
    expect(
      session.placeCalisson(
        { anchor: [-2, -2], chirality: 'right' },
        { anchor: [-2, -3], chirality: 'left' },
      ),
    ).toBe(false);
    expect(session.current.lastRejection).toMatch(/constrained edge/);

    const placements: [TriangleRef, TriangleRef][] = [
      [{ anchor: [2, 2], chirality: 'right' }, { anchor: [2, 2], chirality: 'left' }],
      [{ anchor: [0, 2], chirality: 'right' }, { anchor: [0, 2], chirality: 'left' }],
      [{ anchor: [1, 0], chirality: 'right' }, { anchor: [1, 0], chirality: 'left' }],
      [{ anchor: [-2, 0], chirality: 'right' }, { anchor: [-2, 0], chirality: 'left' }],
      [{ anchor: [0, -2], chirality: 'right' }, { anchor: [0, -2], chirality: 'left' }],
    ];
    for (const [i, [t1, t2]] of placements.entries()) {
      expect(session.placeCalisson(t1, t2)).toBe(true);
      await session.idle();
      const shown = session.current.violations;
      const cli = cliCheck(
        session.exportDocument(),
        session.current.placed.map((c) => ({ cube: [...c.cube] as [number, number, number], normal: c.normal })),
        i,
      );
      expect(shown).toEqual(cli.violations);
      expect(session.current.solved).toBe(cli.verdict === 'valid');
    }

    // reveal lowest, then confirm the engine accepts its own solution
    const revealed = await session.reveal('lowest');
    expect(revealed).toBe(true);
    const tiling = session.current.reveal.lowest!;
    const cliFinal = cliSolve(session.exportDocument(), 99);
    expect(cliFinal.body.verdict).toBe('solvable');
    expect(tiling).toEqual(cliFinal.body.tiling);
    const checked = cliCheck(session.exportDocument(), tiling, 99);
    expect(checked.verdict).toBe('valid');
  }, 120000);

  it('mirrors the engine rejection for boundary edges', async () => {
    const api = new HttpEngineApi(BASE);
    const session = new PuzzleSession(
      api,
      { region: { type: 'hexagon', n: 2 }, edges: [] },
      { debounceMs: 0, scheduler: (fn) => fn() },
    );
    expect(session.toggleConstraintEdge({ v: [2, 0], axis: 'y' })).toBe(false);
    // the engine agrees: the same document with that edge is a 422
    const response = await fetch(`${BASE}/solve`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify({
        document: { region: { type: 'hexagon', n: 2 }, edges: [{ v: [2, 0], axis: 'y' }] },
      }),
    });
    expect(response.status).toBe(422);
  }, 30000);

  it('infinite mode routes through decide', async () => {
    const api = new HttpEngineApi(BASE);
    const session = new PuzzleSession(
      api,
      { region: { type: 'infinite' }, edges: [] },
      { debounceMs: 0, scheduler: (fn) => fn() },
    );
    for (const edge of [
      { v: [0, 0], axis: 'x' },
      { v: [1, 0], axis: 'y' },
      { v: [1, 1], axis: 'z' },
    ] as EdgeRef[]) {
      session.toggleConstraintEdge(edge);
    }
    await session.idle();
    expect(session.current.badge).toBe('unsolvable');
    expect(session.current.witness?.kind).toBe('absorbing_cycle');
    // removing one edge flips the badge back
    session.toggleConstraintEdge({ v: [1, 1], axis: 'z' });
    await session.idle();
    expect(session.current.badge).toBe('solvable');
  }, 30000);
});
