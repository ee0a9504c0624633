/** Client-side preview of the server's counterexample check.
 *
 * Advisory only: it gates the submit button, but the server's verdict is
 * authoritative and is displayed verbatim whenever it disagrees.
 */

export type CellState = "+" | "-" | "?";

export type CellRow = Record<string, CellState>;

export function emptyRow(attributes: readonly string[]): CellRow {
  // unknown is the open-world default; the expert opts into every claim
  const row: CellRow = {};
  for (const attr of attributes) row[attr] = "?";
  return row;
}

export interface RefutationPreview {
  refutes: boolean;
  problems: string[];
}

/** A row refutes premise -> conclusion iff every premise attribute is marked
 * '+' and at least one conclusion attribute is marked '-'. */
export function refutationPreview(
  premise: readonly string[],
  conclusion: readonly string[],
  cells: CellRow,
): RefutationPreview {
  const problems: string[] = [];
  for (const attr of premise) {
    if (cells[attr] !== "+") {
      problems.push(`premise attribute ${attr} not marked +`);
    }
  }
  if (!conclusion.some((attr) => cells[attr] === "-")) {
    problems.push("no conclusion attribute marked -");
  }
  return { refutes: problems.length === 0, problems };
}

export function rowToCounterexampleParts(cells: CellRow): {
  present: string[];
  absent: string[];
} {
  const present: string[] = [];
  const absent: string[] = [];
  for (const [attr, state] of Object.entries(cells)) {
    if (state === "+") present.push(attr);
    else if (state === "-") absent.push(attr);
  }
  return { present: present.sort(), absent: absent.sort() };
}
