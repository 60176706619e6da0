/**
 * Hand-rolled SVG plotting surface: fixed 720x480 canvas, linear or log10
 * axes, polylines, markers and reference lines.  Rendering is a pure
 * function of the inputs — no dates, no randomness — so repeated runs are
 * byte-identical.
 */

export const WIDTH = 720;
export const HEIGHT = 480;
const MARGIN = { left: 72, right: 24, top: 48, bottom: 56 };

/** Short deterministic number formatting for coordinates and labels. */
export function fmt(value: number): string {
  if (value === 0) return "0";
  const rendered = Number(value.toPrecision(6));
  return Math.abs(rendered) >= 1e-4 && Math.abs(rendered) < 1e6
    ? rendered.toString()
    : rendered.toExponential(2).replace("e+", "e");
}

export interface Extent {
  min: number;
  max: number;
}

export function extentOf(values: number[]): Extent {
  let min = Infinity;
  let max = -Infinity;
  for (const v of values) {
    if (!Number.isFinite(v)) continue;
    if (v < min) min = v;
    if (v > max) max = v;
  }
  if (min > max) throw new Error("no finite values to plot");
  if (min === max) {
    const pad = min === 0 ? 1 : Math.abs(min) * 0.5;
    return { min: min - pad, max: max + pad };
  }
  return { min, max };
}

function padded(extent: Extent, fraction = 0.05): Extent {
  const pad = (extent.max - extent.min) * fraction;
  return { min: extent.min - pad, max: extent.max + pad };
}

export class Scale {
  private readonly lo: number;
  private readonly hi: number;

  constructor(
    extent: Extent,
    private readonly pixelLo: number,
    private readonly pixelHi: number,
    readonly log: boolean,
  ) {
    if (log && extent.min <= 0) {
      throw new Error(`log scale needs positive values, got min=${extent.min}`);
    }
    const domain = log
      ? padded({ min: Math.log10(extent.min), max: Math.log10(extent.max) })
      : padded(extent);
    this.lo = domain.min;
    this.hi = domain.max;
  }

  toPixel(value: number): number {
    const v = this.log ? Math.log10(value) : value;
    const frac = (v - this.lo) / (this.hi - this.lo);
    return this.pixelLo + frac * (this.pixelHi - this.pixelLo);
  }

  /** Tick positions in data units: 1-2-5 steps, or decades on log axes. */
  ticks(): number[] {
    if (this.log) {
      const first = Math.ceil(this.lo);
      const last = Math.floor(this.hi);
      const decades = last - first;
      const step = decades > 12 ? Math.ceil(decades / 6) : 1;
      const out: number[] = [];
      for (let d = first; d <= last; d += step) out.push(10 ** d);
      return out.length > 0 ? out : [10 ** ((this.lo + this.hi) / 2)];
    }
    const span = this.hi - this.lo;
    const raw = span / 5;
    const mag = 10 ** Math.floor(Math.log10(raw));
    const residual = raw / mag;
    const step = (residual > 5 ? 10 : residual > 2 ? 5 : residual > 1 ? 2 : 1) * mag;
    const out: number[] = [];
    for (let v = Math.ceil(this.lo / step) * step; v <= this.hi + step * 1e-9; v += step) {
      out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
    }
    return out;
  }
}

export interface Point {
  x: number;
  y: number;
}

export interface StrokeOptions {
  color?: string;
  width?: number;
  dash?: string;
}

interface LegendEntry {
  label: string;
  color: string;
  dash?: string;
}

export class Figure {
  private readonly parts: string[] = [];
  private readonly legendEntries: LegendEntry[] = [];
  readonly xScale: Scale;
  readonly yScale: Scale;

  constructor(
    private readonly title: string,
    private readonly xLabel: string,
    private readonly yLabel: string,
    xExtent: Extent,
    yExtent: Extent,
    options: { xLog?: boolean; yLog?: boolean } = {},
  ) {
    this.xScale = new Scale(
      xExtent, MARGIN.left, WIDTH - MARGIN.right, options.xLog ?? false,
    );
    this.yScale = new Scale(
      yExtent, HEIGHT - MARGIN.bottom, MARGIN.top, options.yLog ?? false,
    );
  }

  line(points: Point[], options: StrokeOptions = {}): this {
    const coords = points
      .map((p) => `${fmt(this.xScale.toPixel(p.x))},${fmt(this.yScale.toPixel(p.y))}`)
      .join(" ");
    this.parts.push(
      `<polyline points="${coords}" fill="none" ` +
        `stroke="${options.color ?? "#1f77b4"}" ` +
        `stroke-width="${options.width ?? 1.5}"` +
        (options.dash ? ` stroke-dasharray="${options.dash}"` : "") +
        "/>",
    );
    return this;
  }

  dots(points: Point[], color = "#1f77b4", radius = 2.5): this {
    for (const p of points) {
      this.parts.push(
        `<circle cx="${fmt(this.xScale.toPixel(p.x))}" ` +
          `cy="${fmt(this.yScale.toPixel(p.y))}" r="${radius}" ` +
          `fill="${color}" fill-opacity="0.65"/>`,
      );
    }
    return this;
  }

  horizontalReference(y: number, label: string, color = "#d62728"): this {
    const py = fmt(this.yScale.toPixel(y));
    this.parts.push(
      `<line x1="${MARGIN.left}" y1="${py}" x2="${WIDTH - MARGIN.right}" ` +
        `y2="${py}" stroke="${color}" stroke-width="1.2" stroke-dasharray="6 4"/>`,
      `<text x="${WIDTH - MARGIN.right - 4}" y="${fmt(Number(py) - 5)}" ` +
        `text-anchor="end" font-size="11" fill="${color}">${label}</text>`,
    );
    return this;
  }

  legend(label: string, color: string, dash?: string): this {
    this.legendEntries.push({ label, color, dash });
    return this;
  }

  render(): string {
    const axis: string[] = [];
    const x0 = MARGIN.left;
    const x1 = WIDTH - MARGIN.right;
    const y0 = HEIGHT - MARGIN.bottom;
    const y1 = MARGIN.top;
    for (const t of this.xScale.ticks()) {
      const px = fmt(this.xScale.toPixel(t));
      axis.push(
        `<line x1="${px}" y1="${y0}" x2="${px}" y2="${y1}" stroke="#dddddd" stroke-width="0.6"/>`,
        `<text x="${px}" y="${y0 + 18}" text-anchor="middle" font-size="11" fill="#333333">${fmt(t)}</text>`,
      );
    }
    for (const t of this.yScale.ticks()) {
      const py = fmt(this.yScale.toPixel(t));
      axis.push(
        `<line x1="${x0}" y1="${py}" x2="${x1}" y2="${py}" stroke="#dddddd" stroke-width="0.6"/>`,
        `<text x="${x0 - 6}" y="${fmt(Number(py) + 4)}" text-anchor="end" font-size="11" fill="#333333">${fmt(t)}</text>`,
      );
    }

    const legend = this.legendEntries.map((entry, i) => {
      const ly = y1 + 14 + i * 16;
      return (
        `<line x1="${x0 + 10}" y1="${ly}" x2="${x0 + 34}" y2="${ly}" ` +
        `stroke="${entry.color}" stroke-width="2"` +
        (entry.dash ? ` stroke-dasharray="${entry.dash}"` : "") + "/>" +
        `<text x="${x0 + 40}" y="${ly + 4}" font-size="11" fill="#333333">${entry.label}</text>`
      );
    });

    return [
      `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}">`,
      `<rect width="${WIDTH}" height="${HEIGHT}" fill="#ffffff"/>`,
      `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="15" fill="#111111">${this.title}</text>`,
      ...axis,
      `<rect x="${x0}" y="${y1}" width="${x1 - x0}" height="${y0 - y1}" fill="none" stroke="#666666" stroke-width="1"/>`,
      ...this.parts,
      ...legend,
      `<text x="${(x0 + x1) / 2}" y="${HEIGHT - 14}" text-anchor="middle" font-size="12" fill="#111111">${this.xLabel}</text>`,
      `<text x="18" y="${(y0 + y1) / 2}" text-anchor="middle" font-size="12" fill="#111111" transform="rotate(-90 18 ${(y0 + y1) / 2})">${this.yLabel}</text>`,
      "</svg>",
    ].join("\n");
  }
}
