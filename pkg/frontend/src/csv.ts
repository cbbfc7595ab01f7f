// CSV export in the CLI's schema, so exported curves feed the same
// plotting pipelines as `squab bench`/`squab compare` output.

import type { SweepResultDoc } from './types.js';

export const CSV_HEADER =
  'code,p,trials,fail_any,fail_z,fail_x,rate_any,ci_lo,ci_hi,rate_z,rate_x,mean_weight';

/** Format with 6 significant digits, trailing zeros stripped (the CLI's
 * float style). */
export function fmt6(x: number): string {
  if (!isFinite(x)) return String(x);
  if (x === 0) return '0';
  const abs = Math.abs(x);
  if (abs >= 1e-4 && abs < 1e6) {
    let out = x.toPrecision(6);
    if (out.includes('.')) out = out.replace(/\.?0+$/, '');
    return out;
  }
  let out = x.toExponential(5);
  out = out.replace(/\.?0+e/, 'e');
  return out;
}

export function resultToCsvRows(result: SweepResultDoc, code?: string): string[] {
  const name = code ?? result.surface.name;
  return result.points.map((pt) =>
    [
      name,
      fmt6(pt.p),
      String(pt.trials),
      String(pt.fail_any),
      String(pt.fail_z),
      String(pt.fail_x),
      fmt6(pt.rate_any),
      fmt6(pt.ci_any[0]),
      fmt6(pt.ci_any[1]),
      fmt6(pt.rate_z),
      fmt6(pt.rate_x),
      fmt6(pt.mean_erasure_weight),
    ].join(','),
  );
}

export function resultsToCsv(results: Array<{ result: SweepResultDoc; code?: string }>): string {
  const lines = [CSV_HEADER];
  for (const { result, code } of results) {
    lines.push(...resultToCsvRows(result, code));
  }
  return lines.join('\n') + '\n';
}
