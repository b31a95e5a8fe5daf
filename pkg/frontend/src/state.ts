/**
 * Pure view-state logic: everything here is derived from the latest server
 * summary plus local form state, with no recomputation of any statistic.
 */
import type { OutcomePayload, SessionSummary } from "./api.js";

export type BadgeKind = "in-progress" | "retain-h0" | "accept-h1";

export interface VerdictView {
  badge: BadgeKind;
  label: string;
  detail: string;
  stale: boolean;
}

export function verdictView(
  summary: SessionSummary | null,
  stale: boolean = false,
): VerdictView {
  if (summary === null) {
    return {
      badge: "in-progress",
      label: "No session",
      detail: "configure a plan to begin",
      stale,
    };
  }
  const { k_e, plan, experiments_complete } = summary;
  const detail =
    `k_e = ${k_e}, threshold k0 = ${plan.k0}, ` +
    `${experiments_complete}/${plan.n_req} experiments`;
  switch (summary.verdict) {
    case "AcceptH1":
      return {
        badge: "accept-h1",
        label: summary.early ? "AcceptH1 (early)" : "AcceptH1",
        detail,
        stale,
      };
    case "RetainH0":
      return { badge: "retain-h0", label: "RetainH0", detail, stale };
    default:
      return { badge: "in-progress", label: "InProgress", detail, stale };
  }
}

export interface ProgressView {
  experiment: number;
  entered: number;
  total: number;
  label: string;
}

export function progressView(summary: SessionSummary): ProgressView {
  return {
    experiment: summary.current_experiment,
    entered: summary.outcomes_entered,
    total: summary.n,
    label:
      `experiment ${summary.current_experiment}: ` +
      `${summary.outcomes_entered}/${summary.n} outcomes`,
  };
}

export interface EntryFormState {
  a: number | null;
  a_prime: number | null;
  b: number | null;
  b_prime: number | null;
  sel_a: "a" | "a_prime" | null;
  sel_b: "b" | "b_prime" | null;
}

export const EMPTY_FORM: EntryFormState = {
  a: null,
  a_prime: null,
  b: null,
  b_prime: null,
  // the selection is the deliberate act; it never defaults
  sel_a: null,
  sel_b: null,
};

/** Which fields still block submission (client-side gate, no request). */
export function missingFields(form: EntryFormState): string[] {
  const missing: string[] = [];
  for (const key of ["a", "a_prime", "b", "b_prime"] as const) {
    if (form[key] !== 0 && form[key] !== 1) missing.push(key);
  }
  if (form.sel_a === null) missing.push("sel_a");
  if (form.sel_b === null) missing.push("sel_b");
  return missing;
}

export function toPayload(form: EntryFormState): OutcomePayload {
  const missing = missingFields(form);
  if (missing.length > 0) {
    throw new Error(`incomplete outcome: missing ${missing.join(", ")}`);
  }
  return {
    a: form.a as number,
    a_prime: form.a_prime as number,
    b: form.b as number,
    b_prime: form.b_prime as number,
    sel_a: form.sel_a as "a" | "a_prime",
    sel_b: form.sel_b as "b" | "b_prime",
  };
}

export interface DeficitStripRow {
  experiment: number;
  deficitBits: string;
  positive: boolean;
}

export function deficitStrip(summary: SessionSummary): DeficitStripRow[] {
  return summary.deficits.map((d) => ({
    experiment: d.experiment,
    deficitBits: d.deficit_bits.toFixed(4),
    positive: d.deficit_bits > 1e-12,
  }));
}

/** Round-trip plan sanity used by the config screen before creating. */
export function planRequestValid(
  n: number,
  p0: number,
  p1: number,
  alpha: number,
  gamma: number,
): string | null {
  if (!Number.isInteger(n) || n < 1) return "n must be a positive integer";
  if (!(p0 > 0 && p0 < 1)) return "p0 must be in (0, 1)";
  if (!(p1 > 0 && p1 < 1)) return "p1 must be in (0, 1)";
  if (!(p0 < p1)) return "p0 must be below p1";
  if (!(alpha > 0 && alpha < 1)) return "alpha must be in (0, 1)";
  if (!(gamma > 0 && gamma < 1)) return "gamma must be in (0, 1)";
  return null;
}
