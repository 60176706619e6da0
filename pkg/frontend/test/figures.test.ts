import { describe, expect, it } from "vitest";

import { Table } from "../src/csv";
import {
  consistencyFigure,
  convergenceFigure,
  qqFigure,
  varianceFigure,
} from "../src/figures";
import { cauchyQuantile } from "../src/stats";

const CAUCHY_HEADER = [
  "replicate", "theta_hat", "s_stable", "s_naive_or_empty", "normalized",
];

function cauchyTable(normalized: string[]): Table {
  return {
    header: CAUCHY_HEADER,
    rows: normalized.map((v, i) => [String(i), "1.0", "2.0", "", v]),
  };
}

/** A sample whose order statistics sit exactly on the Cauchy quantiles. */
function exactCauchySample(n: number): string[] {
  return Array.from({ length: n }, (_, i) =>
    cauchyQuantile((i + 0.5) / n).toPrecision(17),
  );
}

const LIMITS_HEADER = [
  "check_name", "kernel", "params", "t", "value", "reference", "gap", "pass",
];

function limitsTable(
  rows: Array<[string, number, number, number, number]>,
): Table {
  return {
    header: LIMITS_HEADER,
    rows: rows.map(([check, t, value, reference, gap]) => [
      check, "bm", "theta=1", String(t), String(value), String(reference),
      String(gap), "1",
    ]),
  };
}

describe("qqFigure", () => {
  it("fits slope one on an exactly-Cauchy sample", () => {
    const result = qqFigure(cauchyTable(exactCauchySample(500)));
    // (i+0.5)/500 lands in [0.02, 0.98] for i = 10..489
    expect(result.points).toBe(480);
    expect(result.slope).toBeCloseTo(1, 9);
    expect(result.intercept).toBeCloseTo(0, 9);
    expect(result.svg).toContain("<svg");
    expect(result.svg).toContain("identity");
  });

  it("ignores blank normalized fields", () => {
    const values = exactCauchySample(100);
    values.push("", "");
    const result = qqFigure(cauchyTable(values));
    expect(result.slope).toBeCloseTo(1, 6);
  });

  it("rejects a sample that is all blank", () => {
    expect(() => qqFigure(cauchyTable(["", "", ""]))).toThrow(/at least 10/);
  });

  it("rejects a table without the normalized column", () => {
    const table: Table = { header: ["theta_hat"], rows: [["1.0"]] };
    expect(() => qqFigure(table)).toThrow(/normalized/);
  });

  it("is deterministic", () => {
    const table = cauchyTable(exactCauchySample(50));
    expect(qqFigure(table).svg).toBe(qqFigure(table).svg);
  });
});

describe("consistencyFigure", () => {
  const table: Table = {
    header: [
      "horizon", "n_steps", "valid", "degenerate",
      "median_abs_error", "mean_abs_error",
    ],
    rows: [
      ["2", "128", "40", "0", "0.013", "0.02"],
      ["5", "320", "40", "0", "0.0001", "0.0002"],
      ["10", "640", "40", "0", "0", "1e-7"],
    ],
  };

  it("renders a log-axis figure with both error series", () => {
    const svg = consistencyFigure(table);
    expect(svg).toContain("<svg");
    expect(svg).toContain("median |error|");
    expect(svg).toContain("mean |error|");
  });

  it("clamps exact zeros instead of producing non-finite coordinates", () => {
    const svg = consistencyFigure(table);
    expect(svg).not.toContain("NaN");
    expect(svg).not.toContain("Infinity");
  });

  it("rejects a table with no rows", () => {
    expect(() =>
      consistencyFigure({ header: table.header, rows: [] }),
    ).toThrow(/no horizon rows/);
  });
});

describe("varianceFigure", () => {
  const table = limitsTable([
    ["variance_limit", 5, 0.91, 0.8862, 0.027],
    ["variance_limit", 10, 0.89, 0.8862, 0.004],
    ["variance_limit", 20, 0.887, 0.8862, 0.0009],
    ["z_variance_relation", 20, 0.885, 0.8862, 0.0013],
  ]);

  it("draws the curve against a dashed reference", () => {
    const svg = varianceFigure(table);
    expect(svg).toContain("advertised limit");
    expect(svg).toContain('stroke-dasharray="6 4"');
    expect(svg).toContain("limit 0.8862");
    expect(svg).toContain("[bm]");
  });

  it("rejects a table without variance rows", () => {
    const other = limitsTable([["z_variance_relation", 20, 0.88, 0.886, 0.006]]);
    expect(() => varianceFigure(other)).toThrow(/no variance_limit rows/);
  });
});

describe("convergenceFigure", () => {
  const table = limitsTable([
    ["weighted_integral_limit", 30, 1.0, 1.0, 2.4e-9],
    ["weighted_integral_pair_gap", 30, 3e-10, 0, 3e-10],
    ["smooth_term_identity", 5, 1.2, 1.2, 4e-8],
    ["variance_limit", 10, 0.9, 0.886, 0.016],
    ["variance_limit", 20, 0.888, 0.886, 0.002],
    ["variance_limit", 30, 0.8865, 0.886, 0.0006],
    ["z_variance_relation", 30, 0.885, 0.886, 0.0011],
    ["decorrelation_decay", 10, 7.8e-5, 0, 7.8e-5],
    ["decorrelation_decay", 20, 2.9e-9, 0, 2.9e-9],
    ["decorrelation_decay", 30, 0, 0, 0],
  ]);

  it("shows curve series and scalar checks together", () => {
    const svg = convergenceFigure(table);
    expect(svg).toContain("variance gap (relative)");
    expect(svg).toContain("cross-covariance decay");
    expect(svg).toContain("weighted_integral_limit");
    expect(svg).toContain("z_variance_relation");
  });

  it("survives exact-zero gaps on the log axis", () => {
    const svg = convergenceFigure(table);
    expect(svg).not.toContain("NaN");
    expect(svg).not.toContain("Infinity");
  });

  it("is deterministic", () => {
    expect(convergenceFigure(table)).toBe(convergenceFigure(table));
  });

  it("rejects a table with no rows", () => {
    expect(() =>
      convergenceFigure({ header: LIMITS_HEADER, rows: [] }),
    ).toThrow(/no check rows/);
  });
});
