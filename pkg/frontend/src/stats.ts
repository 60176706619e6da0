/** Order statistics and the robust line fit used by the QQ figure. */

export function median(values: number[]): number {
  if (values.length === 0) throw new Error("median of an empty list");
  const sorted = [...values].sort((a, b) => a - b);
  const mid = Math.floor(sorted.length / 2);
  return sorted.length % 2 === 1 ? sorted[mid] : (sorted[mid - 1] + sorted[mid]) / 2;
}

/** Interpolated quantile of an ascending-sorted sample. */
export function quantile(sorted: number[], p: number): number {
  if (sorted.length === 0) throw new Error("quantile of an empty list");
  const pos = (sorted.length - 1) * p;
  const base = Math.floor(pos);
  const rest = pos - base;
  if (base + 1 < sorted.length) {
    return sorted[base] + rest * (sorted[base + 1] - sorted[base]);
  }
  return sorted[base];
}

/** Quantile function of the standard Cauchy law. */
export function cauchyQuantile(p: number): number {
  if (!(p > 0 && p < 1)) throw new Error(`quantile level out of (0,1): ${p}`);
  return Math.tan(Math.PI * (p - 0.5));
}

export interface LineFit {
  slope: number;
  intercept: number;
}

/**
 * Theil-Sen estimator: slope is the median over all pairwise slopes, the
 * intercept the median residual.  Insensitive to a minority of wild points,
 * which is the entire point when fitting heavy-tailed quantiles.
 */
export function theilSen(x: number[], y: number[]): LineFit {
  if (x.length !== y.length) throw new Error("x and y lengths differ");
  if (x.length < 2) throw new Error("need at least two points to fit a line");
  const slopes: number[] = [];
  for (let i = 0; i < x.length; i++) {
    for (let j = i + 1; j < x.length; j++) {
      const dx = x[j] - x[i];
      if (dx !== 0) slopes.push((y[j] - y[i]) / dx);
    }
  }
  if (slopes.length === 0) throw new Error("all x values coincide");
  const slope = median(slopes);
  const intercept = median(x.map((xi, i) => y[i] - slope * xi));
  return { slope, intercept };
}
