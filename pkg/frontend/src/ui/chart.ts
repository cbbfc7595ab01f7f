// Minimal SVG line chart with confidence bands; no dependencies.

export interface ChartSeries {
  name: string;
  color: string;
  points: Array<{ x: number; y: number; lo: number; hi: number }>;
}

const SVG = 'http://www.w3.org/2000/svg';

function el<K extends keyof SVGElementTagNameMap>(
  tag: K,
  attrs: Record<string, string | number>,
): SVGElementTagNameMap[K] {
  const node = document.createElementNS(SVG, tag);
  for (const [key, value] of Object.entries(attrs)) {
    node.setAttribute(key, String(value));
  }
  return node;
}

export function renderChart(
  container: HTMLElement,
  series: ChartSeries[],
  opts: { width?: number; height?: number; xLabel?: string; yLabel?: string } = {},
): void {
  const width = opts.width ?? 560;
  const height = opts.height ?? 320;
  const margin = { top: 12, right: 12, bottom: 36, left: 46 };
  const plotW = width - margin.left - margin.right;
  const plotH = height - margin.top - margin.bottom;

  container.replaceChildren();
  const svg = el('svg', { width, height, viewBox: `0 0 ${width} ${height}` });
  svg.classList.add('chart');

  const xs = series.flatMap((s) => s.points.map((p) => p.x));
  const xMin = xs.length ? Math.min(...xs) : 0;
  const xMax = xs.length ? Math.max(...xs) : 1;
  const spanX = xMax - xMin || 1;
  const sx = (x: number) => margin.left + ((x - xMin) / spanX) * plotW;
  const sy = (y: number) => margin.top + (1 - y) * plotH;

  // frame and ticks
  svg.append(
    el('rect', {
      x: margin.left,
      y: margin.top,
      width: plotW,
      height: plotH,
      fill: 'none',
      stroke: '#475069',
    }),
  );
  for (let i = 0; i <= 5; i++) {
    const y = i / 5;
    const line = el('line', {
      x1: margin.left,
      x2: margin.left + plotW,
      y1: sy(y),
      y2: sy(y),
      stroke: '#2b3148',
      'stroke-dasharray': '3,4',
    });
    svg.append(line);
    const label = el('text', { x: margin.left - 6, y: sy(y) + 4, 'text-anchor': 'end' });
    label.textContent = y.toFixed(1);
    label.classList.add('tick');
    svg.append(label);
    const xv = xMin + spanX * (i / 5);
    const xlabel = el('text', { x: sx(xv), y: margin.top + plotH + 16, 'text-anchor': 'middle' });
    xlabel.textContent = xv.toFixed(2);
    xlabel.classList.add('tick');
    svg.append(xlabel);
  }
  const xcap = el('text', {
    x: margin.left + plotW / 2,
    y: height - 6,
    'text-anchor': 'middle',
  });
  xcap.textContent = opts.xLabel ?? 'erasure probability p';
  xcap.classList.add('axis-label');
  svg.append(xcap);
  const ycap = el('text', {
    x: 12,
    y: margin.top + plotH / 2,
    'text-anchor': 'middle',
    transform: `rotate(-90 12 ${margin.top + plotH / 2})`,
  });
  ycap.textContent = opts.yLabel ?? 'P[uncorrectable]';
  ycap.classList.add('axis-label');
  svg.append(ycap);

  for (const s of series) {
    if (!s.points.length) continue;
    const band = s.points
      .map((p) => `${sx(p.x)},${sy(p.hi)}`)
      .concat([...s.points].reverse().map((p) => `${sx(p.x)},${sy(p.lo)}`))
      .join(' ');
    svg.append(el('polygon', { points: band, fill: s.color, opacity: 0.18, stroke: 'none' }));
    const line = s.points.map((p) => `${sx(p.x)},${sy(p.y)}`).join(' ');
    svg.append(
      el('polyline', { points: line, fill: 'none', stroke: s.color, 'stroke-width': 2 }),
    );
    for (const p of s.points) {
      svg.append(el('circle', { cx: sx(p.x), cy: sy(p.y), r: 2.6, fill: s.color }));
    }
  }

  // legend
  let ly = margin.top + 8;
  for (const s of series) {
    svg.append(el('rect', { x: margin.left + 10, y: ly - 8, width: 12, height: 3, fill: s.color }));
    const label = el('text', { x: margin.left + 28, y: ly - 3 });
    label.textContent = s.name;
    label.classList.add('legend');
    svg.append(label);
    ly += 16;
  }

  container.append(svg);
}
