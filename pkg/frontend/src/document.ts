// Layout document and its edit commands.
//
// Documents are treated as immutable values: every edit returns a new
// document plus an inverse command, and the editor keeps undo/redo
// stacks of commands.  Rejected edits (out-of-bounds holes, overlaps)
// throw EditError and leave the document untouched; edits that merely
// produce an invalid *surface* (wrong incidence, open-only vertices)
// succeed and are surfaced through service-side validation badges.

import type { BoundaryOnly, EdgeClass, SideName } from './types.js';
import type { EdgeKey } from './derive.js';

export interface Hole {
  row: number;
  col: number;
  height: number;
  width: number;
  perimeter: BoundaryOnly | BoundaryOnly[];
}

export interface LayoutDocument {
  name: string;
  rows: number;
  cols: number;
  sides: Record<SideName, BoundaryOnly>;
  holes: Hole[];
  edgeOverrides: Record<EdgeKey, EdgeClass>;
}

export class EditError extends Error {}

export function newDocument(rows: number, cols: number, name = 'layout'): LayoutDocument {
  if (rows < 1 || cols < 1) throw new EditError('grid needs at least one cell per direction');
  return {
    name,
    rows,
    cols,
    sides: { top: 'closed', right: 'closed', bottom: 'closed', left: 'closed' },
    holes: [],
    edgeOverrides: {},
  };
}

export function cloneDocument(doc: LayoutDocument): LayoutDocument {
  return structuredClone(doc);
}

export function documentsEqual(a: LayoutDocument, b: LayoutDocument): boolean {
  return JSON.stringify(normalize(a)) === JSON.stringify(normalize(b));
}

function normalize(doc: LayoutDocument) {
  return {
    ...doc,
    holes: [...doc.holes].sort((x, y) => x.row - y.row || x.col - y.col),
    edgeOverrides: Object.fromEntries(Object.entries(doc.edgeOverrides).sort()),
  };
}

// -- commands ---------------------------------------------------------------

export interface Command {
  readonly label: string;
  apply(doc: LayoutDocument): { next: LayoutDocument; inverse: Command };
}

export class SetGridSize implements Command {
  readonly label: string;
  constructor(private rows: number, private cols: number) {
    this.label = `grid ${rows}x${cols}`;
  }

  apply(doc: LayoutDocument) {
    if (this.rows < 1 || this.cols < 1) throw new EditError('grid too small');
    // resizing invalidates hole/override geometry; the inverse restores
    // the complete previous state
    const next = cloneDocument(doc);
    next.rows = this.rows;
    next.cols = this.cols;
    next.holes = doc.holes.filter(
      (h) => h.row + h.height <= this.rows - 1 && h.col + h.width <= this.cols - 1 && h.row >= 1 && h.col >= 1,
    );
    next.edgeOverrides = {};
    return { next, inverse: new RestoreDocument(doc, `undo ${this.label}`) };
  }
}

export class RestoreDocument implements Command {
  constructor(private snapshot: LayoutDocument, readonly label: string) {}

  apply(doc: LayoutDocument) {
    return { next: cloneDocument(this.snapshot), inverse: new RestoreDocument(doc, this.label) };
  }
}

export class SetSideClass implements Command {
  readonly label: string;
  constructor(private side: SideName, private cls: BoundaryOnly) {
    this.label = `${side} -> ${cls}`;
  }

  apply(doc: LayoutDocument) {
    const next = cloneDocument(doc);
    const previous = doc.sides[this.side];
    next.sides[this.side] = this.cls;
    return { next, inverse: new SetSideClass(this.side, previous) };
  }
}

export class SetEdgeOverride implements Command {
  readonly label: string;
  constructor(private key: EdgeKey, private cls: EdgeClass | null) {
    this.label = cls === null ? `reset ${key}` : `${key} -> ${cls}`;
  }

  apply(doc: LayoutDocument) {
    const next = cloneDocument(doc);
    const previous = this.key in doc.edgeOverrides ? doc.edgeOverrides[this.key] : null;
    if (this.cls === null) {
      delete next.edgeOverrides[this.key];
    } else {
      next.edgeOverrides[this.key] = this.cls;
    }
    return { next, inverse: new SetEdgeOverride(this.key, previous) };
  }
}

function holesTouch(a: Hole, b: Hole): boolean {
  // one full ring of faces must separate holes (matches the generator)
  return (
    a.row - 1 < b.row + b.height &&
    b.row < a.row + a.height + 1 &&
    a.col - 1 < b.col + b.width &&
    b.col < a.col + a.width + 1
  );
}

export class PunchHole implements Command {
  readonly label: string;
  constructor(private hole: Hole) {
    this.label = `punch ${hole.height}x${hole.width} at (${hole.row},${hole.col})`;
  }

  apply(doc: LayoutDocument) {
    const h = this.hole;
    if (h.height < 1 || h.width < 1) throw new EditError('hole needs positive size');
    if (h.row < 1 || h.col < 1 || h.row + h.height > doc.rows - 1 || h.col + h.width > doc.cols - 1) {
      throw new EditError('hole must sit strictly inside the lattice');
    }
    const perimeterLength = 2 * (h.height + h.width);
    if (Array.isArray(h.perimeter) && h.perimeter.length !== perimeterLength) {
      throw new EditError(`perimeter needs ${perimeterLength} classes`);
    }
    for (const other of doc.holes) {
      if (holesTouch(h, other)) throw new EditError('holes must not overlap or touch');
    }
    const next = cloneDocument(doc);
    next.holes.push(structuredClone(h));
    return { next, inverse: new FillHole(next.holes.length - 1) };
  }
}

export class FillHole implements Command {
  readonly label: string;
  constructor(private index: number) {
    this.label = `fill hole #${index}`;
  }

  apply(doc: LayoutDocument) {
    if (this.index < 0 || this.index >= doc.holes.length) throw new EditError('no such hole');
    const next = cloneDocument(doc);
    const [removed] = next.holes.splice(this.index, 1);
    return { next, inverse: new ReinsertHole(removed, this.index) };
  }
}

class ReinsertHole implements Command {
  readonly label: string;
  constructor(private hole: Hole, private index: number) {
    this.label = `restore hole #${index}`;
  }

  apply(doc: LayoutDocument) {
    const next = cloneDocument(doc);
    next.holes.splice(this.index, 0, structuredClone(this.hole));
    return { next, inverse: new FillHole(this.index) };
  }
}

export class SetName implements Command {
  readonly label: string;
  constructor(private name: string) {
    this.label = `rename to ${name}`;
  }

  apply(doc: LayoutDocument) {
    const next = cloneDocument(doc);
    const previous = doc.name;
    next.name = this.name;
    return { next, inverse: new SetName(previous) };
  }
}

// -- editor: document + undo/redo stacks --------------------------------------

export class Editor {
  private doc: LayoutDocument;
  private undoStack: Command[] = [];
  private redoStack: Command[] = [];

  constructor(initial: LayoutDocument) {
    this.doc = cloneDocument(initial);
  }

  get document(): LayoutDocument {
    return this.doc;
  }

  get canUndo(): boolean {
    return this.undoStack.length > 0;
  }

  get canRedo(): boolean {
    return this.redoStack.length > 0;
  }

  /** Apply a command; returns false when the edit was rejected. */
  edit(command: Command): boolean {
    let result;
    try {
      result = command.apply(this.doc);
    } catch (err) {
      if (err instanceof EditError) return false;
      throw err;
    }
    this.doc = result.next;
    this.undoStack.push(result.inverse);
    this.redoStack = [];
    return true;
  }

  undo(): boolean {
    const inverse = this.undoStack.pop();
    if (!inverse) return false;
    const result = inverse.apply(this.doc);
    this.doc = result.next;
    this.redoStack.push(result.inverse);
    return true;
  }

  redo(): boolean {
    const inverse = this.redoStack.pop();
    if (!inverse) return false;
    const result = inverse.apply(this.doc);
    this.doc = result.next;
    this.undoStack.push(result.inverse);
    return true;
  }
}

// -- presets ------------------------------------------------------------------

/** Bravyi-Kitaev style layout for distance d: (d-1) x d cells, left and
 * right sides open. */
export function bkPreset(d: number): LayoutDocument {
  const doc = newDocument(d - 1, d, `bk-d${d}`);
  doc.sides.left = 'open';
  doc.sides.right = 'open';
  return doc;
}

export function diskPreset(rows: number, cols: number): LayoutDocument {
  return newDocument(rows, cols, `disk-${rows}x${cols}`);
}
