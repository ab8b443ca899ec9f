import { HttpEngineApi } from './api.js';
import { PuzzleEditor } from './editor.js';
import { PuzzleSession } from './state.js';

const params = new URLSearchParams(window.location.search);
const engine = params.get('engine') ?? 'http://127.0.0.1:8000';
const n = Number(params.get('n') ?? '3');

const api = new HttpEngineApi(engine);
const session = new PuzzleSession(api, {
  region: { type: 'hexagon', n },
  edges: [],
});

const root = document.getElementById('app');
if (!root) throw new Error('missing #app container');
new PuzzleEditor(root, session);
