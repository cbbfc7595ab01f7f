// Edit command semantics and the undo-completeness property.

import { describe, expect, it } from 'vitest';

import {
  Editor,
  FillHole,
  PunchHole,
  SetEdgeOverride,
  SetGridSize,
  SetName,
  SetSideClass,
  cloneDocument,
  documentsEqual,
  newDocument,
} from '../src/document.js';
import type { Command, LayoutDocument } from '../src/document.js';
import { edgeKeyH, edgeKeyV } from '../src/derive.js';

// deterministic PRNG for the property scripts
function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a = (a + 0x6d2b79f5) >>> 0;
    let t = a;
    t = Math.imul(t ^ (t >>> 15), t | 1);
    t ^= t + Math.imul(t ^ (t >>> 7), t | 61);
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function randomCommand(rng: () => number, doc: LayoutDocument): Command {
  const pick = <T>(xs: T[]): T => xs[Math.floor(rng() * xs.length)];
  const kind = Math.floor(rng() * 6);
  switch (kind) {
    case 0:
      return new SetGridSize(1 + Math.floor(rng() * 5), 1 + Math.floor(rng() * 5));
    case 1:
      return new SetSideClass(pick(['top', 'right', 'bottom', 'left']), pick(['open', 'closed']));
    case 2: {
      const r = Math.floor(rng() * (doc.rows + 1));
      const c = Math.floor(rng() * doc.cols);
      const key = rng() < 0.5 ? edgeKeyH(r, c) : edgeKeyV(Math.min(r, doc.rows - 1), c);
      return new SetEdgeOverride(key, pick(['open', 'closed', 'interior', null]));
    }
    case 3:
      return new PunchHole({
        row: 1 + Math.floor(rng() * 3),
        col: 1 + Math.floor(rng() * 3),
        height: 1 + Math.floor(rng() * 2),
        width: 1 + Math.floor(rng() * 2),
        perimeter: pick(['open', 'closed']),
      });
    case 4:
      return new FillHole(Math.floor(rng() * Math.max(1, doc.holes.length)));
    default:
      return new SetName(`layout-${Math.floor(rng() * 100)}`);
  }
}

describe('edit commands', () => {
  it('side class round trip', () => {
    const editor = new Editor(newDocument(3, 3));
    editor.edit(new SetSideClass('left', 'open'));
    expect(editor.document.sides.left).toBe('open');
    editor.undo();
    expect(editor.document.sides.left).toBe('closed');
  });

  it('edge override set and reset', () => {
    const editor = new Editor(newDocument(3, 3));
    const key = edgeKeyH(0, 1);
    editor.edit(new SetEdgeOverride(key, 'open'));
    expect(editor.document.edgeOverrides[key]).toBe('open');
    editor.edit(new SetEdgeOverride(key, null));
    expect(key in editor.document.edgeOverrides).toBe(false);
    editor.undo();
    expect(editor.document.edgeOverrides[key]).toBe('open');
  });

  it('punch then fill restores', () => {
    const editor = new Editor(newDocument(5, 5));
    expect(editor.edit(new PunchHole({ row: 2, col: 2, height: 1, width: 1, perimeter: 'open' }))).toBe(true);
    expect(editor.document.holes.length).toBe(1);
    expect(editor.edit(new FillHole(0))).toBe(true);
    expect(editor.document.holes.length).toBe(0);
    editor.undo();
    expect(editor.document.holes.length).toBe(1);
    editor.undo();
    expect(editor.document.holes.length).toBe(0);
  });

  it('rejects out-of-bounds and touching holes without changing state', () => {
    const editor = new Editor(newDocument(5, 5));
    const before = cloneDocument(editor.document);
    expect(editor.edit(new PunchHole({ row: 0, col: 1, height: 1, width: 1, perimeter: 'open' }))).toBe(false);
    expect(editor.edit(new PunchHole({ row: 4, col: 1, height: 1, width: 1, perimeter: 'open' }))).toBe(false);
    expect(documentsEqual(editor.document, before)).toBe(true);
    expect(editor.canUndo).toBe(false);

    editor.edit(new PunchHole({ row: 1, col: 1, height: 1, width: 1, perimeter: 'open' }));
    expect(editor.edit(new PunchHole({ row: 2, col: 2, height: 1, width: 1, perimeter: 'open' }))).toBe(false);
    expect(editor.document.holes.length).toBe(1);
  });

  it('resize drops out-of-range holes but undo restores them', () => {
    const editor = new Editor(newDocument(6, 6));
    editor.edit(new PunchHole({ row: 3, col: 3, height: 2, width: 2, perimeter: 'closed' }));
    editor.edit(new SetGridSize(3, 3));
    expect(editor.document.holes.length).toBe(0);
    editor.undo();
    expect(editor.document.holes.length).toBe(1);
    expect(editor.document.rows).toBe(6);
  });

  it('redo replays an undone edit', () => {
    const editor = new Editor(newDocument(3, 3));
    editor.edit(new SetSideClass('top', 'open'));
    const after = cloneDocument(editor.document);
    editor.undo();
    expect(editor.canRedo).toBe(true);
    editor.redo();
    expect(documentsEqual(editor.document, after)).toBe(true);
  });

  it('new edit clears the redo stack', () => {
    const editor = new Editor(newDocument(3, 3));
    editor.edit(new SetSideClass('top', 'open'));
    editor.undo();
    editor.edit(new SetSideClass('bottom', 'open'));
    expect(editor.canRedo).toBe(false);
  });
});

describe('undo completeness', () => {
  it('returns to the initial document over 100 random edit scripts', () => {
    for (let script = 0; script < 100; script++) {
      const rng = mulberry32(0xc0ffee + script);
      const initial = newDocument(2 + Math.floor(rng() * 4), 2 + Math.floor(rng() * 4));
      const editor = new Editor(initial);
      const steps = 1 + Math.floor(rng() * 30);
      let applied = 0;
      for (let i = 0; i < steps; i++) {
        if (editor.edit(randomCommand(rng, editor.document))) applied++;
      }
      const final = cloneDocument(editor.document);
      let undone = 0;
      while (editor.undo()) undone++;
      expect(undone).toBe(applied);
      expect(documentsEqual(editor.document, initial)).toBe(true);
      // and redo-all restores the final state
      while (editor.redo()) { /* drain */ }
      expect(documentsEqual(editor.document, final)).toBe(true);
    }
  });
});
