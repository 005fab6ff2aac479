import { FIELDS, FIELD_BY_KEY } from "./fields.js";
import type { QuestionnaireDoc } from "./types.js";

/** Raw form content: what the person typed or ticked, nothing derived.
 *
 * Numeric fields hold the raw input string ("" means unanswered) so a
 * half-typed value never rounds or disappears under the user. Flags are
 * tri-state through absence: a key missing from `flags` was never touched,
 * false was explicitly answered "no".
 */
export interface FormState {
  numbers: Record<string, string>;
  flags: Record<string, boolean>;
}

export function emptyForm(): FormState {
  return { numbers: {}, flags: {} };
}

export interface FieldIssue {
  key: string;
  message: string;
}

/** Syntactic screening only: is each filled field a usable number?
 * Plausibility and every clinical judgement stay on the service side. */
export function fieldIssues(state: FormState): FieldIssue[] {
  const issues: FieldIssue[] = [];
  for (const [key, raw] of Object.entries(state.numbers)) {
    const spec = FIELD_BY_KEY.get(key);
    if (!spec || spec.kind !== "number") {
      issues.push({ key, message: "not a numeric field" });
      continue;
    }
    if (raw.trim() === "") continue;
    const value = Number(raw);
    if (!Number.isFinite(value)) {
      issues.push({ key, message: `${spec.label} is not a number` });
    } else if (value < 0) {
      issues.push({ key, message: `${spec.label} cannot be negative` });
    }
  }
  return issues;
}

/** Serialize to the canonical questionnaire document: answered fields only,
 * x1..x17 order, numbers for measurements and 0/1 for yes-no answers.
 * This is byte-for-byte the document shape the service itself echoes back,
 * so a recorded canonical fixture can be compared key by key. */
export function serializeQuestionnaire(state: FormState): QuestionnaireDoc {
  const doc: QuestionnaireDoc = {};
  for (const spec of FIELDS) {
    if (spec.kind === "flag") {
      const answered = Object.prototype.hasOwnProperty.call(state.flags, spec.key);
      if (answered) doc[spec.key] = state.flags[spec.key] ? 1 : 0;
    } else {
      const raw = state.numbers[spec.key];
      if (raw !== undefined && raw.trim() !== "") {
        const value = Number(raw);
        if (Number.isFinite(value) && value >= 0) doc[spec.key] = value;
      }
    }
  }
  return doc;
}

/** A what-if overlay: hypothetical values for a subset of indicators.
 * `null` clears a baseline answer entirely (back to unanswered). */
export type Overlay = Record<string, number | null>;

/** Merge an overlay over a baseline document without touching the baseline.
 * The result keeps canonical key order regardless of overlay insertion
 * order, so hypothetical documents serialize exactly like submitted ones. */
export function applyOverlay(baseline: QuestionnaireDoc, overlay: Overlay): QuestionnaireDoc {
  const doc: QuestionnaireDoc = {};
  for (const spec of FIELDS) {
    const hasOverlay = Object.prototype.hasOwnProperty.call(overlay, spec.key);
    if (hasOverlay) {
      const value = overlay[spec.key];
      if (value !== null && value !== undefined) doc[spec.key] = value;
    } else if (Object.prototype.hasOwnProperty.call(baseline, spec.key)) {
      doc[spec.key] = baseline[spec.key] as number;
    }
  }
  return doc;
}
