// Cellulation derivation: structure, classes, holes, overrides.

import { describe, expect, it } from 'vitest';

import { Editor, SetEdgeOverride, SetSideClass, bkPreset, newDocument } from '../src/document.js';
import { deriveCellulation, edgeKeyH, edgeKeyV } from '../src/derive.js';

describe('deriveCellulation', () => {
  it('all-closed 2x3 disk', () => {
    const cell = deriveCellulation(newDocument(2, 3));
    expect(cell.vertices.length).toBe(12);
    expect(cell.edges.length).toBe(17);
    expect(cell.faces.length).toBe(6);
    expect(cell.edges.filter((e) => e.class === 'interior').length).toBe(7);
    expect(cell.edges.filter((e) => e.class === 'closed').length).toBe(10);
    expect(cell.vertices.every((v) => !v.open)).toBe(true);
  });

  it('bk d=3 preset: canvas-built planar code with 13 qubits', () => {
    const cell = deriveCellulation(bkPreset(3));
    const qubitEdges = cell.edges.filter((e) => e.class !== 'open');
    expect(qubitEdges.length).toBe(13);
    expect(cell.edges.filter((e) => e.class === 'open').length).toBe(4);
    // open flags derived: the outer columns' vertices touch open edges
    expect(cell.vertices.filter((v) => v.open).length).toBe(6);
  });

  it('side classes re-class outer boundary edges', () => {
    const editor = new Editor(newDocument(2, 2));
    editor.edit(new SetSideClass('top', 'open'));
    const cell = deriveCellulation(editor.document);
    const top = cell.edges.filter((e) => e.class === 'open');
    expect(top.length).toBe(2); // the two top horizontals
    expect(top.every((e) => e.ends[0] <= 2 && e.ends[1] <= 2)).toBe(true);
  });

  it('holes remove faces, inner structure, and class their perimeter', () => {
    const doc = newDocument(6, 6);
    doc.holes.push({ row: 2, col: 2, height: 2, width: 2, perimeter: 'open' });
    const cell = deriveCellulation(doc);
    expect(cell.faces.length).toBe(32);
    expect(cell.vertices.length).toBe(48); // center vertex removed
    expect(cell.edges.length).toBe(80); // 84 grid edges minus 4 inner
    expect(cell.edges.filter((e) => e.class === 'open').length).toBe(8);
  });

  it('mixed perimeter applies clockwise from the top-left', () => {
    const doc = newDocument(5, 6);
    doc.holes.push({
      row: 2,
      col: 2,
      height: 1,
      width: 2,
      perimeter: ['open', 'open', 'closed', 'closed', 'closed', 'closed'],
    });
    const cell = deriveCellulation(doc);
    const byId = new Map(cell.edges.map((e) => [e.id, e]));
    // top horizontals of the hole: h(2,2) and h(2,3) with id = r*cols + c
    expect(byId.get(2 * 6 + 2)!.class).toBe('open');
    expect(byId.get(2 * 6 + 3)!.class).toBe('open');
    // bottom horizontals stay closed
    expect(byId.get(3 * 6 + 2)!.class).toBe('closed');
    expect(byId.get(3 * 6 + 3)!.class).toBe('closed');
  });

  it('edge overrides apply last, even illegally', () => {
    const editor = new Editor(newDocument(3, 3));
    editor.edit(new SetEdgeOverride(edgeKeyV(1, 1), 'open')); // interior edge forced open
    const cell = deriveCellulation(editor.document);
    const nH = 4 * 3;
    const id = nH + 1 * 4 + 1;
    expect(cell.edges.find((e) => e.id === id)!.class).toBe('open');
    // endpoints flagged open because an open edge now touches them
    const [a, b] = cell.edges.find((e) => e.id === id)!.ends;
    expect(cell.vertices.find((v) => v.id === a)!.open).toBe(true);
    expect(cell.vertices.find((v) => v.id === b)!.open).toBe(true);
  });

  it('embeds the editable document in the layout block by default', () => {
    const doc = newDocument(2, 2, 'roundtrip');
    const cell = deriveCellulation(doc);
    expect(cell.layout?.document).toBeDefined();
    expect((cell.layout!.document as { name: string }).name).toBe('roundtrip');
    const bare = deriveCellulation(doc, { embedDocument: false });
    expect(bare.layout).toBeUndefined();
  });

  it('edge ids follow the generator scheme', () => {
    const cell = deriveCellulation(newDocument(2, 3));
    const h01 = cell.edges.find((e) => e.id === 1)!; // h(0,1): (0,1)-(0,2)
    expect(h01.ends).toEqual([1, 2]);
    const v00 = cell.edges.find((e) => e.id === 3 * 3 + 0)!; // v(0,0): (0,0)-(1,0)
    expect(v00.ends).toEqual([0, 4]);
    expect(edgeKeyH(0, 1)).toBe('h:0:1');
    expect(edgeKeyV(0, 0)).toBe('v:0:0');
  });
});
