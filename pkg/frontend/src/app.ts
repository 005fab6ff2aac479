import { ApiClient, ApiError, RequestSlot } from "./api.js";
import { FIELDS } from "./fields.js";
import { emptyForm, fieldIssues, serializeQuestionnaire, applyOverlay } from "./form.js";
import type { FormState, Overlay } from "./form.js";
import type { AssessResponse, QuestionnaireDoc } from "./types.js";
import { el, renderComparison, renderProfilePanel, renderRecommendation } from "./view.js";

/** Everything the page needs to run; tests drive this object directly. */
export interface App {
  form: FormState;
  submit(): Promise<void>;
  applyWhatIf(overlay: Overlay): Promise<void>;
  readonly baselineDoc: QuestionnaireDoc | null;
  root: HTMLElement;
}

function replaceChildren(target: HTMLElement, ...nodes: HTMLElement[]): void {
  target.innerHTML = "";
  for (const node of nodes) target.append(node);
}

function renderError(err: unknown): HTMLElement {
  const message = err instanceof ApiError || err instanceof Error ? err.message : String(err);
  return el("div", { class: "error", role: "alert" }, [`Request failed: ${message}`]);
}

/** Build the page inside `root`. All service traffic goes through `client`;
 * the what-if panel only ever calls /assess so hypotheticals are never
 * persisted, while submit also fetches the stored recommendation. */
export function createApp(root: HTMLElement, client: ApiClient = new ApiClient()): App {
  const form = emptyForm();
  const submitSlot = new RequestSlot();
  const whatIfSlot = new RequestSlot();

  let baselineDoc: QuestionnaireDoc | null = null;
  let baselineAssess: AssessResponse | null = null;

  const formSection = el("section", { class: "form" });
  const issuesBox = el("div", { class: "issues" });
  const profileBox = el("div", { class: "profile-box" });
  const whatIfBox = el("div", { class: "whatif-box" });
  const recommendationBox = el("div", { class: "recommendation-box" });

  const inputs = new Map<string, HTMLInputElement>();
  for (const spec of FIELDS) {
    const input = el("input", { id: `field-${spec.key}`, name: spec.key });
    const label = el("label", { for: `field-${spec.key}` }, [
      spec.unit ? `${spec.label} (${spec.unit})` : spec.label,
    ]);
    if (spec.kind === "flag") {
      input.type = "checkbox";
      input.addEventListener("change", () => {
        form.flags[spec.key] = input.checked;
      });
    } else {
      input.type = "number";
      input.min = "0";
      if (spec.step) input.step = spec.step;
      input.addEventListener("input", () => {
        form.numbers[spec.key] = input.value;
      });
    }
    inputs.set(spec.key, input);
    formSection.append(el("div", { class: "field" }, [label, input]));
  }

  async function submit(): Promise<void> {
    const issues = fieldIssues(form);
    replaceChildren(issuesBox, ...issues.map((i) => el("p", { class: "issue" }, [i.message])));
    if (issues.length > 0) return;

    const doc = serializeQuestionnaire(form);
    const outcome = await submitSlot
      .run(async (signal) => {
        const assess = await client.assess(doc, signal);
        const recommend = await client.recommend(doc, signal);
        return { assess, recommend };
      })
      .catch((err) => {
        replaceChildren(profileBox, renderError(err));
        return null;
      });
    if (!outcome || outcome.stale || !outcome.value) return;

    baselineDoc = doc;
    baselineAssess = outcome.value.assess;
    replaceChildren(profileBox, renderProfilePanel(outcome.value.assess, "Assessment"));
    replaceChildren(recommendationBox, renderRecommendation(outcome.value.recommend.recommendation));
    whatIfBox.innerHTML = "";
  }

  async function applyWhatIf(overlay: Overlay): Promise<void> {
    if (!baselineDoc || !baselineAssess) return;
    const hypotheticalDoc = applyOverlay(baselineDoc, overlay);
    const baseline = baselineAssess;
    const outcome = await whatIfSlot
      .run((signal) => client.assess(hypotheticalDoc, signal))
      .catch((err) => {
        replaceChildren(whatIfBox, renderError(err));
        return null;
      });
    if (!outcome || outcome.stale || outcome.value === undefined) return;
    replaceChildren(whatIfBox, renderComparison(baseline, outcome.value));
  }

  const submitButton = el("button", { type: "button", class: "submit" }, ["Assess"]);
  submitButton.addEventListener("click", () => void submit());

  const quitSmoking = el("input", { id: "whatif-smoking", type: "checkbox" });
  const sbpInput = el("input", { id: "whatif-sbp", type: "number", min: "0" });
  const whatIfButton = el("button", { type: "button", class: "whatif" }, ["Compare"]);
  whatIfButton.addEventListener("click", () => {
    const overlay: Overlay = {};
    if (quitSmoking.checked) overlay["x15"] = 0;
    if (sbpInput.value.trim() !== "") overlay["x12"] = Number(sbpInput.value);
    void applyWhatIf(overlay);
  });

  const whatIfControls = el("div", { class: "whatif-controls" }, [
    el("h3", {}, ["What if…"]),
    el("label", { for: "whatif-smoking" }, ["I quit smoking"]),
    quitSmoking,
    el("label", { for: "whatif-sbp" }, ["My systolic pressure were (mmHg)"]),
    sbpInput,
    whatIfButton,
  ]);

  replaceChildren(
    root,
    el("h1", {}, ["Cardiovascular prevention check"]),
    formSection,
    el("div", { class: "actions" }, [submitButton]),
    issuesBox,
    profileBox,
    whatIfControls,
    whatIfBox,
    recommendationBox,
  );

  return {
    form,
    submit,
    applyWhatIf,
    get baselineDoc() {
      return baselineDoc;
    },
    root,
  };
}
