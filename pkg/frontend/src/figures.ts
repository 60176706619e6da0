/**
 * The four figure builders.  Each takes a parsed table from one of the
 * estimator CLI's CSV outputs and returns a complete SVG document; shape
 * problems (missing columns, no usable rows) throw before anything is
 * rendered.
 */

import { Table, column, numericColumn } from "./csv";
import { cauchyQuantile, theilSen } from "./stats";
import { Extent, Figure, Point, extentOf, fmt } from "./svg";

/** Values at or below this are drawn at the floor on log axes. */
const LOG_FLOOR = 1e-17;

function logSafe(value: number): number {
  return Number.isFinite(value) && value > LOG_FLOOR ? value : LOG_FLOOR;
}

const BLUE = "#1f77b4";
const ORANGE = "#ff7f0e";
const GREEN = "#2ca02c";
const RED = "#d62728";
const PURPLE = "#9467bd";

export interface QqResult {
  svg: string;
  slope: number;
  intercept: number;
  points: number;
}

/**
 * Normalized-error sample against standard Cauchy quantiles.
 *
 * Plotting positions (i+1/2)/n are truncated to [0.02, 0.98]: the Cauchy
 * quantile function blows up at the ends, and the extreme order statistics
 * of a heavy-tailed sample carry no information about the bulk fit.  The
 * overlaid line is a Theil-Sen fit, so the reported slope/intercept are
 * robust to the few wild points that survive truncation.
 */
export function qqFigure(table: Table): QqResult {
  const sample = numericColumn(table, "normalized")
    .filter((v) => Number.isFinite(v))
    .sort((a, b) => a - b);
  if (sample.length < 10) {
    throw new Error(`need at least 10 finite normalized values, got ${sample.length}`);
  }
  const n = sample.length;
  const xs: number[] = [];
  const ys: number[] = [];
  for (let i = 0; i < n; i++) {
    const p = (i + 0.5) / n;
    if (p < 0.02 || p > 0.98) continue;
    xs.push(cauchyQuantile(p));
    ys.push(sample[i]);
  }
  const fit = theilSen(xs, ys);

  const xExtent = extentOf(xs);
  const yExtent = extentOf(ys);
  const both: Extent = {
    min: Math.min(xExtent.min, yExtent.min),
    max: Math.max(xExtent.max, yExtent.max),
  };
  const fig = new Figure(
    "Normalized error vs standard Cauchy quantiles",
    "Cauchy quantile",
    "sample quantile",
    both,
    both,
  );
  fig.line(
    [{ x: both.min, y: both.min }, { x: both.max, y: both.max }],
    { color: "#888888", width: 1, dash: "5 4" },
  );
  fig.line(
    [
      { x: both.min, y: fit.slope * both.min + fit.intercept },
      { x: both.max, y: fit.slope * both.max + fit.intercept },
    ],
    { color: RED, width: 1.5 },
  );
  fig.dots(xs.map((x, i) => ({ x, y: ys[i] })), BLUE, 2);
  fig.legend("sample", BLUE);
  fig.legend(
    `fit: slope=${fmt(fit.slope)} intercept=${fmt(fit.intercept)}`,
    RED,
  );
  fig.legend("identity", "#888888", "5 4");
  return {
    svg: fig.render(),
    slope: fit.slope,
    intercept: fit.intercept,
    points: xs.length,
  };
}

/** Median and mean absolute estimation error against the horizon, log-y. */
export function consistencyFigure(table: Table): string {
  const horizon = numericColumn(table, "horizon");
  const medians = numericColumn(table, "median_abs_error").map(logSafe);
  const means = numericColumn(table, "mean_abs_error").map(logSafe);
  if (horizon.length === 0) throw new Error("no horizon rows to plot");

  const medianPts: Point[] = horizon.map((x, i) => ({ x, y: medians[i] }));
  const meanPts: Point[] = horizon.map((x, i) => ({ x, y: means[i] }));
  const fig = new Figure(
    "Estimation error vs horizon",
    "horizon t",
    "absolute error",
    extentOf(horizon),
    extentOf([...medians, ...means]),
    { yLog: true },
  );
  fig.line(medianPts, { color: BLUE }).dots(medianPts, BLUE);
  fig.line(meanPts, { color: ORANGE, dash: "4 3" }).dots(meanPts, ORANGE);
  fig.legend("median |error|", BLUE);
  fig.legend("mean |error|", ORANGE, "4 3");
  return fig.render();
}

interface LimitRow {
  check: string;
  kernel: string;
  t: number;
  value: number;
  reference: number;
  gap: number;
}

function limitRows(table: Table): LimitRow[] {
  const check = column(table, "check_name");
  const kernel = column(table, "kernel");
  const t = numericColumn(table, "t");
  const value = numericColumn(table, "value");
  const reference = numericColumn(table, "reference");
  const gap = numericColumn(table, "gap");
  return check.map((c, i) => ({
    check: c,
    kernel: kernel[i],
    t: t[i],
    value: value[i],
    reference: reference[i],
    gap: gap[i],
  }));
}

/** Variance curve against its advertised limit, from verify-limits rows. */
export function varianceFigure(table: Table): string {
  const rows = limitRows(table).filter((r) => r.check === "variance_limit");
  if (rows.length === 0) {
    throw new Error("no variance_limit rows in this table");
  }
  const pts: Point[] = rows.map((r) => ({ x: r.t, y: r.value }));
  const reference = rows[rows.length - 1].reference;
  const fig = new Figure(
    `Residual variance vs horizon [${rows[0].kernel}]`,
    "horizon t",
    "variance",
    extentOf(pts.map((p) => p.x)),
    extentOf([...pts.map((p) => p.y), reference]),
  );
  fig.horizontalReference(reference, `limit ${fmt(reference)}`, RED);
  fig.line(pts, { color: BLUE }).dots(pts, BLUE);
  fig.legend("variance of the residual", BLUE);
  fig.legend("advertised limit", RED, "6 4");
  return fig.render();
}

/**
 * One panel per verify-limits run: every check's gap on a shared log axis.
 * Curve checks (variance, decorrelation) appear as series, scalar checks
 * as single labelled markers at their evaluation time.
 */
export function convergenceFigure(table: Table): string {
  const rows = limitRows(table);
  if (rows.length === 0) throw new Error("no check rows to plot");

  const series = (name: string): Point[] =>
    rows
      .filter((r) => r.check === name)
      .map((r) => ({ x: r.t, y: logSafe(r.gap) }));
  const variance = series("variance_limit");
  const decay = series("decorrelation_decay");
  const scalars = rows.filter(
    (r) => r.check !== "variance_limit" && r.check !== "decorrelation_decay",
  );
  const scalarColors = [GREEN, PURPLE, "#8c564b", "#e377c2"];

  const allY = [
    ...variance.map((p) => p.y),
    ...decay.map((p) => p.y),
    ...scalars.map((r) => logSafe(r.gap)),
  ];
  const allX = [
    ...variance.map((p) => p.x),
    ...decay.map((p) => p.x),
    ...scalars.map((r) => r.t),
  ];
  const fig = new Figure(
    `Limit-check gaps [${rows[0].kernel}]`,
    "evaluation time t",
    "gap",
    extentOf(allX),
    extentOf(allY),
    { yLog: true },
  );
  if (variance.length > 0) {
    fig.line(variance, { color: BLUE }).dots(variance, BLUE);
    fig.legend("variance gap (relative)", BLUE);
  }
  if (decay.length > 0) {
    fig.line(decay, { color: ORANGE }).dots(decay, ORANGE);
    fig.legend("cross-covariance decay", ORANGE);
  }
  scalars.forEach((r, i) => {
    const color = scalarColors[i % scalarColors.length];
    fig.dots([{ x: r.t, y: logSafe(r.gap) }], color, 4);
    fig.legend(`${r.check} = ${fmt(r.gap)}`, color);
  });
  return fig.render();
}
