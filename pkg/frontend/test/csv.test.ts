import { describe, expect, it } from "vitest";

import { column, numericColumn, parseCsv } from "../src/csv";

describe("parseCsv", () => {
  it("splits header and rows", () => {
    const table = parseCsv("a,b\n1,2\n3,4\n");
    expect(table.header).toEqual(["a", "b"]);
    expect(table.rows).toEqual([["1", "2"], ["3", "4"]]);
  });

  it("ignores trailing newlines and blank lines", () => {
    const table = parseCsv("a,b\n1,2\n\n\n");
    expect(table.rows).toHaveLength(1);
  });

  it("accepts CRLF row terminators", () => {
    const table = parseCsv("a,b\r\n1,2\r\n3,4\r\n");
    expect(table.header).toEqual(["a", "b"]);
    expect(table.rows).toEqual([["1", "2"], ["3", "4"]]);
  });

  it("rejects empty text", () => {
    expect(() => parseCsv("")).toThrow(/empty/);
    expect(() => parseCsv("\n\n")).toThrow(/empty/);
  });

  it("rejects a header-only file", () => {
    expect(() => parseCsv("a,b\n")).toThrow(/no data rows/);
  });

  it("rejects ragged rows", () => {
    expect(() => parseCsv("a,b\n1,2,3\n")).toThrow(/row 1 has 3 fields/);
  });
});

describe("column access", () => {
  const table = parseCsv("t,value,note\n1,0.5,\n2,nan,x\n3,-inf,y\n4,,z\n");

  it("returns the named column", () => {
    expect(column(table, "t")).toEqual(["1", "2", "3", "4"]);
  });

  it("names the available columns when one is missing", () => {
    expect(() => column(table, "missing")).toThrow(/t, value, note/);
  });

  it("maps empty and python float spellings", () => {
    const values = numericColumn(table, "value");
    expect(values[0]).toBe(0.5);
    expect(values[1]).toBeNaN();
    expect(values[2]).toBe(-Infinity);
    expect(values[3]).toBeNaN();
  });

  it("throws on non-numeric fields", () => {
    expect(() => numericColumn(table, "note")).toThrow(/non-numeric field "x"/);
  });
});
