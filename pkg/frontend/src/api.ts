/** Typed client for the engine's HTTP endpoints. */

import type { CalissonRef, EdgeRef } from './geometry.js';

export interface RegionSpec {
  type: 'hexagon' | 'boundary' | 'infinite';
  n?: number;
  start?: [number, number];
  steps?: string[];
}

export interface PuzzleDocument {
  region: RegionSpec;
  edges: { v: [number, number]; axis: string }[];
  title?: string;
}

export interface TilingItem {
  cube: [number, number, number];
  normal: 'x' | 'y' | 'z';
}

export interface ViolationItem {
  kind: string;
  triangle?: { anchor: [number, number]; chirality: 'left' | 'right' };
  edge?: { v: [number, number]; axis: 'x' | 'y' | 'z' };
}

export interface WitnessItem {
  kind: string;
  cubes?: number[][];
  vertices?: number[][];
  total_weight?: number;
}

export interface GraphDump {
  vertices: number[][];
  arcs: { from: number[]; to: number[]; weight: number; tag: string }[];
}

export interface SolveResponse {
  verdict: 'solvable' | 'unsolvable';
  tiling?: TilingItem[];
  witness?: WitnessItem;
  projected_graph?: GraphDump;
}

export interface CheckResponse {
  verdict: 'valid' | 'invalid';
  violations: ViolationItem[];
}

export interface ExtremesResponse {
  verdict: 'tilable' | 'untilable';
  min?: TilingItem[];
  max?: TilingItem[];
  witness?: WitnessItem;
}

export class EngineError extends Error {
  constructor(
    public code: string,
    message: string,
    public location?: string,
    public status?: number,
  ) {
    super(message);
  }
}

export interface EngineApi {
  solve(doc: PuzzleDocument, which?: 'lowest' | 'highest'): Promise<SolveResponse>;
  decide(doc: PuzzleDocument): Promise<SolveResponse>;
  check(doc: PuzzleDocument, tiling: TilingItem[]): Promise<CheckResponse>;
  extremes(doc: PuzzleDocument): Promise<ExtremesResponse>;
  render(doc: PuzzleDocument, tiling?: TilingItem[]): Promise<string>;
}

export function documentEdge(e: EdgeRef): { v: [number, number]; axis: string } {
  return { v: [e.v[0], e.v[1]], axis: e.axis };
}

export function calissonToWire(c: CalissonRef): TilingItem {
  return { cube: [c.cube[0], c.cube[1], c.cube[2]], normal: c.normal };
}

export class HttpEngineApi implements EngineApi {
  constructor(
    private baseUrl: string,
    private fetchImpl: typeof fetch = fetch,
  ) {}

  private async post<T>(path: string, body: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method: 'POST',
      headers: { 'content-type': 'application/json' },
      body: JSON.stringify(body),
    });
    if (!response.ok) {
      let code = 'http_error';
      let message = `${path} failed with ${response.status}`;
      let location: string | undefined;
      try {
        const data = (await response.json()) as { error?: { code: string; message: string; location?: string } };
        if (data.error) {
          code = data.error.code;
          message = data.error.message;
          location = data.error.location;
        }
      } catch {
        /* non-JSON error body */
      }
      throw new EngineError(code, message, location, response.status);
    }
    if (path === '/render') {
      return (await response.text()) as unknown as T;
    }
    return (await response.json()) as T;
  }

  solve(doc: PuzzleDocument, which: 'lowest' | 'highest' = 'lowest'): Promise<SolveResponse> {
    return this.post('/solve', { document: doc, which });
  }

  decide(doc: PuzzleDocument): Promise<SolveResponse> {
    return this.post('/decide', { document: doc });
  }

  check(doc: PuzzleDocument, tiling: TilingItem[]): Promise<CheckResponse> {
    return this.post('/check', { document: doc, tiling });
  }

  extremes(doc: PuzzleDocument): Promise<ExtremesResponse> {
    return this.post('/extremes', { document: doc });
  }

  render(doc: PuzzleDocument, tiling?: TilingItem[]): Promise<string> {
    return this.post('/render', { document: doc, tiling: tiling ?? null, format: 'svg' });
  }
}
