import { describe, expect, it } from "vitest";

import {
  emptyRow,
  refutationPreview,
  rowToCounterexampleParts,
} from "../src/refute.js";

const NAMES = [
  "AsianCountry",
  "EUmember",
  "EuropeanCountry",
  "G8member",
  "MediterraneanCountry",
];

describe("emptyRow", () => {
  it("defaults every attribute to unknown", () => {
    expect(emptyRow(NAMES)).toEqual({
      AsianCountry: "?",
      EUmember: "?",
      EuropeanCountry: "?",
      G8member: "?",
      MediterraneanCountry: "?",
    });
  });
});

describe("refutationPreview", () => {
  const premise = ["EuropeanCountry", "G8member"];
  const conclusion = ["EUmember"];

  it("accepts a row that refutes the implication", () => {
    const cells = {
      ...emptyRow(NAMES),
      EuropeanCountry: "+" as const,
      G8member: "+" as const,
      EUmember: "-" as const,
    };
    expect(refutationPreview(premise, conclusion, cells)).toEqual({
      refutes: true,
      problems: [],
    });
  });

  it("names each premise attribute that is not marked +", () => {
    // the Russia row entered without +G8member must not be submittable
    const cells = {
      ...emptyRow(NAMES),
      AsianCountry: "+" as const,
      EuropeanCountry: "+" as const,
      EUmember: "-" as const,
    };
    const preview = refutationPreview(premise, conclusion, cells);
    expect(preview.refutes).toBe(false);
    expect(preview.problems).toEqual(["premise attribute G8member not marked +"]);
  });

  it("treats a premise attribute marked - as missing too", () => {
    const cells = {
      ...emptyRow(NAMES),
      EuropeanCountry: "+" as const,
      G8member: "-" as const,
      EUmember: "-" as const,
    };
    expect(refutationPreview(premise, conclusion, cells).problems).toEqual([
      "premise attribute G8member not marked +",
    ]);
  });

  it("requires some conclusion attribute to be marked -", () => {
    const cells = {
      ...emptyRow(NAMES),
      EuropeanCountry: "+" as const,
      G8member: "+" as const,
    };
    expect(refutationPreview(premise, conclusion, cells)).toEqual({
      refutes: false,
      problems: ["no conclusion attribute marked -"],
    });
  });

  it("reports every problem at once", () => {
    const preview = refutationPreview(premise, conclusion, emptyRow(NAMES));
    expect(preview.problems).toEqual([
      "premise attribute EuropeanCountry not marked +",
      "premise attribute G8member not marked +",
      "no conclusion attribute marked -",
    ]);
  });

  it("an empty premise only needs a refuted conclusion attribute", () => {
    const cells = { ...emptyRow(["A", "B"]), B: "-" as const };
    expect(refutationPreview([], ["A", "B"], cells).refutes).toBe(true);
  });
});

describe("rowToCounterexampleParts", () => {
  it("splits marked cells and drops unknowns", () => {
    expect(
      rowToCounterexampleParts({
        AsianCountry: "+",
        EUmember: "-",
        EuropeanCountry: "+",
        G8member: "?",
        MediterraneanCountry: "-",
      }),
    ).toEqual({
      present: ["AsianCountry", "EuropeanCountry"],
      absent: ["EUmember", "MediterraneanCountry"],
    });
  });
});
