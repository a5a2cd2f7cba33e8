/** Loader for the bound-validation JSON emitted by `tracelink bounds`. */

import { SchemaError } from "./csv";

export interface BoundReport {
  name: string;
  analytic: number;
  empirical: number;
  stderr: number;
  trials: number;
  satisfied: boolean;
  vacuous: boolean;
}

const NUMBER_FIELDS = ["analytic", "empirical", "stderr", "trials"] as const;
const BOOLEAN_FIELDS = ["satisfied", "vacuous"] as const;

export function parseBoundsJson(text: string): BoundReport[] {
  let doc: unknown;
  try {
    doc = JSON.parse(text);
  } catch (err) {
    throw new SchemaError(`not valid JSON: ${(err as Error).message}`);
  }
  if (typeof doc !== "object" || doc === null || !Array.isArray((doc as any).reports)) {
    throw new SchemaError("expected an object with a reports array");
  }
  const reports: BoundReport[] = [];
  for (const [i, raw] of (doc as any).reports.entries()) {
    if (typeof raw !== "object" || raw === null) {
      throw new SchemaError(`report ${i} is not an object`);
    }
    if (typeof raw.name !== "string") {
      throw new SchemaError(`report ${i}: missing field name`);
    }
    for (const field of NUMBER_FIELDS) {
      if (typeof raw[field] !== "number") {
        throw new SchemaError(`report ${raw.name}: missing numeric field ${field}`);
      }
    }
    for (const field of BOOLEAN_FIELDS) {
      if (typeof raw[field] !== "boolean") {
        throw new SchemaError(`report ${raw.name}: missing boolean field ${field}`);
      }
    }
    reports.push({
      name: raw.name,
      analytic: raw.analytic,
      empirical: raw.empirical,
      stderr: raw.stderr,
      trials: raw.trials,
      satisfied: raw.satisfied,
      vacuous: raw.vacuous,
    });
  }
  return reports;
}
