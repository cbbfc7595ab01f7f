// Application shell: canvas editing, live code badges, benchmark runs,
// and the comparison cockpit.  All numbers come from the service.

import { SquabApi, ApiError } from '../api.js';
import { CSV_HEADER, resultsToCsv } from '../csv.js';
import {
  Editor,
  FillHole,
  PunchHole,
  SetEdgeOverride,
  SetGridSize,
  SetName,
  SetSideClass,
  bkPreset,
  newDocument,
} from '../document.js';
import type { LayoutDocument } from '../document.js';
import { deriveCellulation } from '../derive.js';
import type {
  Cellulation,
  CodeInfo,
  SideName,
  SweepResultDoc,
  SweepSettings,
  Violation,
} from '../types.js';
import { sameSweepConfig } from '../types.js';
import { renderCanvas } from './canvas.js';
import { renderChart } from './chart.js';
import type { ChartSeries } from './chart.js';

type Tool = 'open' | 'closed' | 'reset' | 'punch' | 'fill';

const COLORS = ['#4fc3f7', '#ffb74d', '#81c784', '#f06292', '#ba68c8', '#fff176', '#90a4ae'];

interface StoredResult {
  name: string;
  result: SweepResultDoc;
}

function $(id: string): HTMLElement {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

function input(id: string): HTMLInputElement {
  return $(id) as HTMLInputElement;
}

export class App {
  private api: SquabApi;
  private editor = new Editor(newDocument(4, 5, 'layout'));
  private tool: Tool = 'closed';
  private valid = false;
  private violations: Violation[] = [];
  private info: CodeInfo | null = null;
  private infoEpoch = 0;
  private refreshTimer: number | undefined;
  private runningJob: string | null = null;
  private lastResult: SweepResultDoc | null = null;
  private comparison: StoredResult[] = [];
  private showSeries = { any: true, z: false, x: false };

  constructor(baseUrl: string) {
    this.api = new SquabApi(baseUrl);
  }

  start(): void {
    this.bindToolbar();
    this.bindBenchPanel();
    this.bindComparePanel();
    this.render();
    this.scheduleRefresh();
  }

  private get doc(): LayoutDocument {
    return this.editor.document;
  }

  // -- editing ----------------------------------------------------------------

  private applyEdit(command: Parameters<Editor['edit']>[0]): void {
    if (!this.editor.edit(command)) {
      this.flash(`edit rejected: ${command.label}`);
      return;
    }
    this.render();
    this.scheduleRefresh();
  }

  private bindToolbar(): void {
    for (const tool of ['open', 'closed', 'reset', 'punch', 'fill'] as Tool[]) {
      $(`tool-${tool}`).addEventListener('click', () => {
        this.tool = tool;
        this.renderToolbar();
      });
    }
    $('btn-undo').addEventListener('click', () => this.undo());
    $('btn-redo').addEventListener('click', () => this.redo());
    document.addEventListener('keydown', (ev) => {
      if (!(ev.ctrlKey || ev.metaKey)) return;
      if (ev.key === 'z') {
        ev.preventDefault();
        this.undo();
      } else if (ev.key === 'y') {
        ev.preventDefault();
        this.redo();
      }
    });

    $('btn-resize').addEventListener('click', () => {
      this.applyEdit(new SetGridSize(Number(input('grid-rows').value), Number(input('grid-cols').value)));
    });
    for (const side of ['top', 'right', 'bottom', 'left'] as SideName[]) {
      $(`side-${side}`).addEventListener('change', (ev) => {
        const value = (ev.target as HTMLSelectElement).value as 'open' | 'closed';
        this.applyEdit(new SetSideClass(side, value));
      });
    }
    $('btn-preset-bk').addEventListener('click', () => {
      const d = Number(input('preset-bk-d').value);
      if (d >= 2) this.loadDocument(bkPreset(d));
    });
    $('btn-preset-disk').addEventListener('click', () => {
      this.loadDocument(newDocument(4, 5, 'disk-4x5'));
    });
    input('doc-name').addEventListener('change', () => {
      this.applyEdit(new SetName(input('doc-name').value || 'layout'));
    });

    $('btn-export').addEventListener('click', () => this.exportFile());
    input('file-import').addEventListener('change', (ev) => {
      const file = (ev.target as HTMLInputElement).files?.[0];
      if (file) void this.importFile(file);
    });
  }

  private undo(): void {
    if (this.editor.undo()) {
      this.render();
      this.scheduleRefresh();
    }
  }

  private redo(): void {
    if (this.editor.redo()) {
      this.render();
      this.scheduleRefresh();
    }
  }

  private loadDocument(doc: LayoutDocument): void {
    this.editor = new Editor(doc);
    this.render();
    this.scheduleRefresh();
  }

  private onEdgeClick(key: string): void {
    if (this.tool === 'open' || this.tool === 'closed') {
      this.applyEdit(new SetEdgeOverride(key, this.tool));
    } else if (this.tool === 'reset') {
      this.applyEdit(new SetEdgeOverride(key, null));
    }
  }

  private onFaceClick(row: number, col: number): void {
    if (this.tool === 'punch') {
      const height = Number(input('hole-h').value) || 1;
      const width = Number(input('hole-w').value) || 1;
      const perimeter = (input('hole-class').value as 'open' | 'closed') || 'closed';
      this.applyEdit(new PunchHole({ row, col, height, width, perimeter }));
    } else if (this.tool === 'fill') {
      const index = this.doc.holes.findIndex(
        (h) => row >= h.row && row < h.row + h.height && col >= h.col && col < h.col + h.width,
      );
      if (index >= 0) this.applyEdit(new FillHole(index));
    }
  }

  // -- validation + badges ------------------------------------------------------

  private scheduleRefresh(): void {
    window.clearTimeout(this.refreshTimer);
    this.refreshTimer = window.setTimeout(() => void this.refresh(), 180);
  }

  private async refresh(): Promise<void> {
    const epoch = ++this.infoEpoch;
    const lattice = deriveCellulation(this.doc, { embedDocument: false });
    try {
      const validation = await this.api.validate(lattice);
      if (epoch !== this.infoEpoch) return; // superseded by a newer edit
      this.valid = validation.ok;
      this.violations = validation.violations;
      this.info = validation.ok ? await this.api.info(lattice) : null;
      if (epoch !== this.infoEpoch) return;
    } catch (err) {
      this.valid = false;
      this.violations = [{ rule: 'service', element: String(err) }];
      this.info = null;
    }
    this.renderBadges();
  }

  // -- benchmarks ----------------------------------------------------------------

  private sweepSettings(): SweepSettings {
    const pMin = Number(input('p-min').value);
    const pMax = Number(input('p-max').value);
    const steps = Number(input('p-steps').value);
    const values: number[] = [];
    if (steps <= 1) {
      values.push(pMin);
    } else {
      const step = (pMax - pMin) / (steps - 1);
      for (let i = 0; i < steps; i++) values.push(pMin + i * step);
    }
    return {
      p_values: values,
      trials_per_point: Number(input('trials').value),
      master_seed: Number(input('seed').value),
      mode: (input('mode').value as SweepSettings['mode']) || 'both',
    };
  }

  private bindBenchPanel(): void {
    $('btn-run').addEventListener('click', () => void this.runBenchmark());
    $('btn-cancel').addEventListener('click', () => {
      if (this.runningJob) void this.api.cancelJob(this.runningJob);
    });
    for (const key of ['any', 'z', 'x'] as const) {
      $(`show-${key}`).addEventListener('change', (ev) => {
        this.showSeries[key] = (ev.target as HTMLInputElement).checked;
        this.renderResultChart();
      });
    }
    $('btn-keep').addEventListener('click', () => {
      if (!this.lastResult) return;
      this.addToComparison(this.lastResult.surface.name || 'layout', this.lastResult);
    });
  }

  private async runBenchmark(): Promise<void> {
    if (!this.valid || this.runningJob) return;
    const lattice = deriveCellulation(this.doc, { embedDocument: false });
    await this.runLattice(lattice);
  }

  private async runLattice(lattice: Cellulation): Promise<void> {
    const settings = this.sweepSettings();
    const progress = $('bench-progress') as HTMLProgressElement;
    try {
      const id = await this.api.submitBenchmark(lattice, settings);
      this.runningJob = id;
      this.renderBenchControls();
      const status = await this.api.waitForJob(id, (f) => {
        progress.value = f;
      });
      this.runningJob = null;
      this.renderBenchControls();
      if (status.state === 'failed') {
        this.flash(`benchmark failed: ${status.error}`);
        return;
      }
      this.lastResult = await this.api.jobResult(id);
      this.renderResultChart();
    } catch (err) {
      this.runningJob = null;
      this.renderBenchControls();
      this.flash(err instanceof ApiError ? `service: ${err.message}` : String(err));
    }
  }

  // -- comparison ----------------------------------------------------------------

  private bindComparePanel(): void {
    $('btn-add-toric').addEventListener('click', () => void this.addToric());
    $('btn-export-csv').addEventListener('click', () => this.exportCsv());
  }

  private async addToric(): Promise<void> {
    const d = Number(input('toric-d').value);
    if (d < 2) return;
    try {
      const lattice = await this.api.fetchToric(d);
      const settings = this.sweepSettings();
      const id = await this.api.submitBenchmark(lattice, settings);
      const status = await this.api.waitForJob(id);
      if (status.state === 'failed') {
        this.flash(`toric benchmark failed: ${status.error}`);
        return;
      }
      const result = await this.api.jobResult(id);
      this.addToComparison(`toric-d${d}`, result);
    } catch (err) {
      this.flash(String(err));
    }
  }

  private addToComparison(name: string, result: SweepResultDoc): void {
    if (this.comparison.length > 0 && !sameSweepConfig(this.comparison[0].result.config, result.config)) {
      this.flash('sweep config differs from the stored curves; re-run with matching settings');
      return;
    }
    const unique = this.comparison.some((r) => r.name === name)
      ? `${name}-${this.comparison.length + 1}`
      : name;
    this.comparison.push({ name: unique, result });
    this.renderComparison();
  }

  private exportCsv(): void {
    if (!this.comparison.length) return;
    const csv = resultsToCsv(this.comparison.map((r) => ({ result: r.result, code: r.name })));
    this.download('comparison.csv', csv, 'text/csv');
  }

  // -- files ----------------------------------------------------------------------

  private exportFile(): void {
    const lattice = deriveCellulation(this.doc, { embedDocument: true });
    this.download(
      `${this.doc.name || 'layout'}.squab.json`,
      JSON.stringify(lattice, null, 1) + '\n',
      'application/json',
    );
  }

  private async importFile(file: File): Promise<void> {
    try {
      const parsed = JSON.parse(await file.text()) as Cellulation;
      const embedded = parsed.layout?.document as LayoutDocument | undefined;
      if (embedded && typeof embedded.rows === 'number') {
        this.loadDocument(embedded);
        this.flash(`loaded editable layout ${parsed.name}`);
      } else {
        this.flash('file has no layout block; benchmarking it directly');
        await this.runLattice(parsed);
      }
    } catch (err) {
      this.flash(`import failed: ${err}`);
    }
  }

  private download(filename: string, content: string, mime: string): void {
    const blob = new Blob([content], { type: mime });
    const a = document.createElement('a');
    a.href = URL.createObjectURL(blob);
    a.download = filename;
    a.click();
    URL.revokeObjectURL(a.href);
  }

  // -- rendering --------------------------------------------------------------------

  private render(): void {
    renderCanvas($('canvas'), this.doc, {
      onEdgeClick: (key) => this.onEdgeClick(key),
      onFaceClick: (r, c) => this.onFaceClick(r, c),
    });
    input('grid-rows').value = String(this.doc.rows);
    input('grid-cols').value = String(this.doc.cols);
    input('doc-name').value = this.doc.name;
    for (const side of ['top', 'right', 'bottom', 'left'] as SideName[]) {
      (document.getElementById(`side-${side}`) as HTMLSelectElement).value = this.doc.sides[side];
    }
    this.renderToolbar();
    this.renderBadges();
    this.renderBenchControls();
  }

  private renderToolbar(): void {
    for (const tool of ['open', 'closed', 'reset', 'punch', 'fill'] as Tool[]) {
      $(`tool-${tool}`).classList.toggle('active', this.tool === tool);
    }
    ($('btn-undo') as HTMLButtonElement).disabled = !this.editor.canUndo;
    ($('btn-redo') as HTMLButtonElement).disabled = !this.editor.canRedo;
  }

  private renderBadges(): void {
    const badge = $('badge-valid');
    badge.textContent = this.valid ? 'valid' : 'invalid';
    badge.className = `badge ${this.valid ? 'ok' : 'bad'}`;
    $('badge-n').textContent = this.info ? `n=${this.info.n}` : 'n=?';
    $('badge-k').textContent = this.info ? `k=${this.info.k}` : 'k=?';
    const list = $('violations');
    list.replaceChildren(
      ...this.violations.map((v) => {
        const li = document.createElement('li');
        li.textContent = `${v.rule}: ${v.element}`;
        return li;
      }),
    );
    const weights = $('weights');
    if (this.info) {
      const show = (h: Record<string, number>) =>
        Object.entries(h)
          .map(([w, c]) => `w${w}×${c}`)
          .join('  ');
      weights.textContent =
        `X: ${show(this.info.x_weight_histogram)}   Z: ${show(this.info.z_weight_histogram)}`;
    } else {
      weights.textContent = '';
    }
    this.renderBenchControls();
  }

  private renderBenchControls(): void {
    ($('btn-run') as HTMLButtonElement).disabled = !this.valid || this.runningJob !== null;
    ($('btn-cancel') as HTMLButtonElement).disabled = this.runningJob === null;
    ($('bench-progress') as HTMLProgressElement).style.visibility =
      this.runningJob !== null ? 'visible' : 'hidden';
  }

  private resultSeries(stored: StoredResult[], which: 'any' | 'z' | 'x'): ChartSeries[] {
    const key = { any: 'rate_any', z: 'rate_z', x: 'rate_x' } as const;
    const ci = { any: 'ci_any', z: 'ci_z', x: 'ci_x' } as const;
    return stored.map((r, i) => ({
      name: which === 'any' ? r.name : `${r.name} (${which.toUpperCase()})`,
      color: COLORS[i % COLORS.length],
      points: r.result.points.map((pt) => ({
        x: pt.p,
        y: pt[key[which]],
        lo: pt[ci[which]][0],
        hi: pt[ci[which]][1],
      })),
    }));
  }

  private renderResultChart(): void {
    if (!this.lastResult) return;
    const stored = [{ name: this.lastResult.surface.name || 'layout', result: this.lastResult }];
    const series: ChartSeries[] = [];
    if (this.showSeries.any) series.push(...this.resultSeries(stored, 'any'));
    if (this.showSeries.z) series.push(...this.resultSeries(stored, 'z'));
    if (this.showSeries.x) series.push(...this.resultSeries(stored, 'x'));
    renderChart($('bench-chart'), series);
    ($('btn-keep') as HTMLButtonElement).disabled = false;
  }

  private renderComparison(): void {
    renderChart($('compare-chart'), this.resultSeries(this.comparison, 'any'));
    const table = $('compare-table') as HTMLTableElement;
    table.replaceChildren();
    if (this.comparison.length === 0) return;
    const header = table.insertRow();
    header.insertCell().textContent = 'p';
    header.insertCell().textContent = 'best code';
    header.insertCell().textContent = 'rate';
    const points = this.comparison[0].result.points;
    points.forEach((_, i) => {
      let best = 0;
      for (let j = 1; j < this.comparison.length; j++) {
        if (this.comparison[j].result.points[i].rate_any <
            this.comparison[best].result.points[i].rate_any) {
          best = j;
        }
      }
      const row = table.insertRow();
      row.insertCell().textContent = points[i].p.toFixed(3);
      row.insertCell().textContent = this.comparison[best].name;
      row.insertCell().textContent =
        this.comparison[best].result.points[i].rate_any.toPrecision(4);
    });
    ($('btn-export-csv') as HTMLButtonElement).disabled = this.comparison.length === 0;
  }

  private flash(message: string): void {
    const node = $('flash');
    node.textContent = message;
    node.classList.add('visible');
    window.setTimeout(() => node.classList.remove('visible'), 4000);
  }
}

export function mountApp(): void {
  const base = (document.getElementById('service-url') as HTMLInputElement | null)?.value
    ?? 'http://127.0.0.1:8731';
  const app = new App(base.replace(/\/$/, ''));
  app.start();
}

if (typeof document !== 'undefined' && document.getElementById('canvas')) {
  mountApp();
}
