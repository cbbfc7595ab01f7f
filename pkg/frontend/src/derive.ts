// Derive the cellulation JSON for a layout document.
//
// Mirrors the planar generator's structure: vertex (r,c) has id
// r*(cols+1)+c, horizontal edge (r,c)-(r,c+1) has id r*cols+c, vertical
// edge (r,c)-(r+1,c) has id (rows+1)*cols + r*(cols+1)+c, face (r,c) has
// id r*cols+c.  Hole faces are removed along with edges left on no face;
// surviving boundary edges take their side or hole-perimeter class, then
// per-edge overrides are applied verbatim (possibly producing a surface
// the service will flag as invalid - that is the editor's contract).

import type { BoundaryOnly, CellEdge, Cellulation, EdgeClass, SideName } from './types.js';
import type { Hole, LayoutDocument } from './document.js';

export type EdgeKey = string; // "h:r:c" | "v:r:c"

export function edgeKeyH(r: number, c: number): EdgeKey {
  return `h:${r}:${c}`;
}

export function edgeKeyV(r: number, c: number): EdgeKey {
  return `v:${r}:${c}`;
}

export function holeCells(hole: Hole): Array<[number, number]> {
  const cells: Array<[number, number]> = [];
  for (let r = hole.row; r < hole.row + hole.height; r++) {
    for (let c = hole.col; c < hole.col + hole.width; c++) {
      cells.push([r, c]);
    }
  }
  return cells;
}

// Perimeter edge keys clockwise from the hole's top-left corner.
export function holePerimeterKeys(hole: Hole): EdgeKey[] {
  const keys: EdgeKey[] = [];
  for (let c = hole.col; c < hole.col + hole.width; c++) keys.push(edgeKeyH(hole.row, c));
  for (let r = hole.row; r < hole.row + hole.height; r++) keys.push(edgeKeyV(r, hole.col + hole.width));
  for (let c = hole.col + hole.width - 1; c >= hole.col; c--) keys.push(edgeKeyH(hole.row + hole.height, c));
  for (let r = hole.row + hole.height - 1; r >= hole.row; r--) keys.push(edgeKeyV(r, hole.col));
  return keys;
}

export function holePerimeterClasses(hole: Hole): BoundaryOnly[] {
  const length = 2 * (hole.height + hole.width);
  if (typeof hole.perimeter === 'string') {
    return new Array(length).fill(hole.perimeter);
  }
  return hole.perimeter.slice(0, length);
}

interface EdgeGeom {
  key: EdgeKey;
  id: number;
  ends: [number, number];
  horizontal: boolean;
  r: number;
  c: number;
}

export function enumerateEdges(rows: number, cols: number): EdgeGeom[] {
  const vid = (r: number, c: number) => r * (cols + 1) + c;
  const out: EdgeGeom[] = [];
  for (let r = 0; r <= rows; r++) {
    for (let c = 0; c < cols; c++) {
      out.push({
        key: edgeKeyH(r, c),
        id: r * cols + c,
        ends: [vid(r, c), vid(r, c + 1)],
        horizontal: true,
        r,
        c,
      });
    }
  }
  const nH = (rows + 1) * cols;
  for (let r = 0; r < rows; r++) {
    for (let c = 0; c <= cols; c++) {
      out.push({
        key: edgeKeyV(r, c),
        id: nH + r * (cols + 1) + c,
        ends: [vid(r, c), vid(r + 1, c)],
        horizontal: false,
        r,
        c,
      });
    }
  }
  return out;
}

export function deriveCellulation(doc: LayoutDocument, opts?: { embedDocument?: boolean }): Cellulation {
  const { rows, cols } = doc;
  const holeSet = new Set<string>();
  for (const hole of doc.holes) {
    for (const [r, c] of holeCells(hole)) holeSet.add(`${r}:${c}`);
  }

  const faces: Array<{ id: number; edges: number[] }> = [];
  const incident = new Map<number, number>();
  const nH = (rows + 1) * cols;
  for (let r = 0; r < rows; r++) {
    for (let c = 0; c < cols; c++) {
      if (holeSet.has(`${r}:${c}`)) continue;
      const eids = [
        r * cols + c,
        (r + 1) * cols + c,
        nH + r * (cols + 1) + c,
        nH + r * (cols + 1) + c + 1,
      ];
      faces.push({ id: r * cols + c, edges: [...eids].sort((a, b) => a - b) });
      for (const e of eids) incident.set(e, (incident.get(e) ?? 0) + 1);
    }
  }

  const holeClassByKey = new Map<EdgeKey, BoundaryOnly>();
  for (const hole of doc.holes) {
    const ring = holePerimeterKeys(hole);
    const classes = holePerimeterClasses(hole);
    ring.forEach((key, i) => holeClassByKey.set(key, classes[i]));
  }

  const sideOf = (g: EdgeGeom): SideName =>
    g.horizontal ? (g.r === 0 ? 'top' : 'bottom') : g.c === 0 ? 'left' : 'right';

  const edges: CellEdge[] = [];
  for (const g of enumerateEdges(rows, cols)) {
    const faceCount = incident.get(g.id) ?? 0;
    if (faceCount === 0) continue;
    let cls: EdgeClass;
    if (faceCount === 2) {
      cls = 'interior';
    } else if (holeClassByKey.has(g.key)) {
      cls = holeClassByKey.get(g.key)!;
    } else {
      cls = doc.sides[sideOf(g)];
    }
    const override = doc.edgeOverrides[g.key];
    if (override !== undefined) cls = override;
    edges.push({ id: g.id, ends: g.ends, class: cls });
  }

  const used = new Set<number>();
  const open = new Set<number>();
  for (const e of edges) {
    used.add(e.ends[0]);
    used.add(e.ends[1]);
    if (e.class === 'open') {
      open.add(e.ends[0]);
      open.add(e.ends[1]);
    }
  }
  const vertices = [...used]
    .sort((a, b) => a - b)
    .map((id) => ({ id, open: open.has(id) }));

  const cellulation: Cellulation = {
    format_version: 1,
    name: doc.name,
    vertices,
    edges,
    faces,
  };
  if (opts?.embedDocument !== false) {
    cellulation.layout = { document: structuredClone(doc) };
  }
  return cellulation;
}
