/** Form layout metadata for the 17 questionnaire indicators.
 *
 * Labels and units mirror the service's intake vocabulary so that what the
 * person sees here matches the texts the engine sends back. No thresholds
 * or derivation rules live on this side; the service owns all of that.
 */

export type FieldKind = "flag" | "number";

export interface FieldSpec {
  key: string;
  label: string;
  kind: FieldKind;
  unit?: string;
  /** Step hint for numeric inputs; presentation only. */
  step?: string;
}

export const FIELDS: readonly FieldSpec[] = [
  { key: "x1", label: "Sex (male)", kind: "flag" },
  { key: "x2", label: "Age", kind: "number", unit: "years", step: "1" },
  { key: "x3", label: "Height", kind: "number", unit: "cm", step: "1" },
  { key: "x4", label: "Weight", kind: "number", unit: "kg", step: "0.1" },
  { key: "x5", label: "Family history of early CVD", kind: "flag" },
  { key: "x6", label: "Documented cardiovascular disease", kind: "flag" },
  { key: "x7", label: "Chronic kidney disease", kind: "flag" },
  { key: "x8", label: "History of cardiovascular events", kind: "flag" },
  { key: "x9", label: "Type 2 diabetes", kind: "flag" },
  { key: "x10", label: "Total cholesterol", kind: "number", unit: "mmol/l", step: "0.1" },
  { key: "x11", label: "Non-HDL cholesterol", kind: "number", unit: "mmol/l", step: "0.1" },
  { key: "x12", label: "Systolic blood pressure", kind: "number", unit: "mmHg", step: "1" },
  { key: "x13", label: "Blood glucose", kind: "number", unit: "mmol/l", step: "0.1" },
  { key: "x14", label: "Physical inactivity", kind: "flag" },
  { key: "x15", label: "Smoking", kind: "flag" },
  { key: "x16", label: "Unhealthy diet", kind: "flag" },
  { key: "x17", label: "Angina symptoms with deterioration", kind: "flag" },
];

export const FIELD_BY_KEY: ReadonlyMap<string, FieldSpec> = new Map(
  FIELDS.map((f) => [f.key, f]),
);

/** Display names for the 13 factor flags in an assessment response,
 * index 0 = factor 1. Used to label badges; the flags themselves always
 * come from the service. */
export const FACTOR_LABELS: readonly string[] = [
  "angina symptoms with deterioration",
  "documented cardiovascular disease or past cardiovascular events",
  "chronic kidney disease",
  "type 2 diabetes",
  "family history of early CVD",
  "obesity",
  "high total cholesterol",
  "high non-HDL cholesterol",
  "high systolic blood pressure",
  "high blood glucose",
  "smoking",
  "physical inactivity",
  "unhealthy diet",
];

/** Display names for the 5 class flags, index 0 = class 1. */
export const CLASS_LABELS: readonly string[] = [
  "no risk factors",
  "lifestyle risks",
  "biological risks",
  "severe conditions",
  "urgent conditions",
];
