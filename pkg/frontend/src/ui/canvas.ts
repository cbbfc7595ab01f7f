// SVG lattice editor: renders the derived cellulation on the document's
// grid and reports edge/face clicks back to the app.

import type { LayoutDocument } from '../document.js';
import { deriveCellulation, enumerateEdges, holeCells } from '../derive.js';
import type { EdgeKey } from '../derive.js';

const SVG = 'http://www.w3.org/2000/svg';
const CELL = 44;
const PAD = 26;

export interface CanvasCallbacks {
  onEdgeClick(key: EdgeKey): void;
  onFaceClick(row: number, col: number): void;
}

const EDGE_STYLE: Record<string, { stroke: string; width: number; dash?: string }> = {
  interior: { stroke: '#5d6b8f', width: 2 },
  closed: { stroke: '#e8ecf8', width: 4 },
  open: { stroke: '#ff6b6b', width: 4, dash: '7,5' },
};

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG, tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, String(value));
  return node;
}

export function renderCanvas(
  container: HTMLElement,
  doc: LayoutDocument,
  callbacks: CanvasCallbacks,
): void {
  const width = doc.cols * CELL + 2 * PAD;
  const height = doc.rows * CELL + 2 * PAD;
  const svg = el('svg', { width, height, viewBox: `0 0 ${width} ${height}` });
  svg.classList.add('lattice');

  const px = (c: number) => PAD + c * CELL;
  const py = (r: number) => PAD + r * CELL;

  const holeSet = new Set<string>();
  for (const hole of doc.holes) {
    for (const [r, c] of holeCells(hole)) holeSet.add(`${r}:${c}`);
  }

  // faces
  for (let r = 0; r < doc.rows; r++) {
    for (let c = 0; c < doc.cols; c++) {
      const isHole = holeSet.has(`${r}:${c}`);
      const rect = el('rect', {
        x: px(c) + 2,
        y: py(r) + 2,
        width: CELL - 4,
        height: CELL - 4,
        rx: 3,
        fill: isHole ? 'transparent' : '#1d2438',
        stroke: isHole ? '#394056' : 'none',
        'stroke-dasharray': isHole ? '4,4' : 'none',
      });
      rect.classList.add('face');
      rect.addEventListener('click', () => callbacks.onFaceClick(r, c));
      svg.append(rect);
    }
  }

  // edges from the derived cellulation (so classes/removals match reality)
  const cellulation = deriveCellulation(doc, { embedDocument: false });
  const present = new Map(cellulation.edges.map((e) => [e.id, e] as const));
  for (const g of enumerateEdges(doc.rows, doc.cols)) {
    const edge = present.get(g.id);
    if (!edge) continue;
    const x1 = px(g.c);
    const y1 = py(g.r);
    const x2 = g.horizontal ? px(g.c + 1) : x1;
    const y2 = g.horizontal ? y1 : py(g.r + 1);
    const style = EDGE_STYLE[edge.class];
    const line = el('line', {
      x1, y1, x2, y2,
      stroke: style.stroke,
      'stroke-width': style.width,
      'stroke-linecap': 'round',
      'stroke-dasharray': style.dash ?? 'none',
    });
    if (doc.edgeOverrides[g.key] !== undefined) line.classList.add('overridden');
    svg.append(line);
    // widened invisible hit target
    const hit = el('line', { x1, y1, x2, y2, stroke: 'transparent', 'stroke-width': 12 });
    hit.classList.add('edge-hit');
    const title = document.createElementNS(SVG, 'title');
    title.textContent = `${g.key} (${edge.class})`;
    hit.append(title);
    hit.addEventListener('click', () => callbacks.onEdgeClick(g.key));
    svg.append(hit);
  }

  // vertices
  const open = new Set(cellulation.vertices.filter((v) => v.open).map((v) => v.id));
  const used = new Set(cellulation.vertices.map((v) => v.id));
  for (let r = 0; r <= doc.rows; r++) {
    for (let c = 0; c <= doc.cols; c++) {
      const vid = r * (doc.cols + 1) + c;
      if (!used.has(vid)) continue;
      svg.append(
        el('circle', {
          cx: px(c),
          cy: py(r),
          r: open.has(vid) ? 4.5 : 3,
          fill: open.has(vid) ? '#ff6b6b' : '#aab4d4',
        }),
      );
    }
  }

  container.replaceChildren(svg);
}
