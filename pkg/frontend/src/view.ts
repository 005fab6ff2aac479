import { CLASS_LABELS, FACTOR_LABELS } from "./fields.js";
import type { AssessResponse, Category, Recommendation } from "./types.js";

/** Tiny element builder; enough DOM sugar for a one-page app. */
export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: (Node | string)[] = [],
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [name, value] of Object.entries(attrs)) node.setAttribute(name, value);
  for (const child of children)
    node.append(typeof child === "string" ? document.createTextNode(child) : child);
  return node;
}

export const CATEGORY_TEXT: Record<Category, string> = {
  low: "low",
  moderate: "moderate",
  high: "high",
  very_high: "very high",
  not_assessed: "not assessed",
};

/** Risk gauge: category as text plus a data attribute the stylesheet colors.
 * The text is always present, so the reading never depends on color alone. */
export function renderGauge(assess: AssessResponse): HTMLElement {
  const label = CATEGORY_TEXT[assess.category] ?? assess.category;
  const gauge = el("div", { class: "gauge", "data-category": assess.category, role: "status" });
  gauge.append(el("span", { class: "gauge-label" }, ["Total CV risk: "]));
  gauge.append(el("strong", { class: "gauge-category" }, [label]));
  if (assess.cvrisk !== null) {
    gauge.append(el("span", { class: "gauge-value" }, [` (${assess.cvrisk}% over ten years)`]));
  } else if (assess.risk_note) {
    gauge.append(el("span", { class: "gauge-note" }, [` (${assess.risk_note})`]));
  }
  return gauge;
}

function badge(text: string, kind: string): HTMLElement {
  return el("span", { class: `badge badge-${kind}` }, [text]);
}

/** One assessment as a panel: gauge, class badges, factor badges.
 * Every flag comes straight from the response arrays; indexes are only
 * translated to human labels here. */
export function renderProfilePanel(assess: AssessResponse, title: string): HTMLElement {
  const panel = el("section", { class: "panel" });
  panel.append(el("h3", {}, [title]));

  if ((assess.factor[0] ?? 0) === 1) {
    panel.append(
      el("div", { class: "urgent-banner", role: "alert" }, [
        "Urgent: worsening angina symptoms reported. Contact emergency services " +
          "or an urgent-care physician before anything else on this page.",
      ]),
    );
  }

  panel.append(renderGauge(assess));

  const classBadges = el("div", { class: "badges badges-class" });
  assess.class.forEach((bit, i) => {
    if (bit === 1 && i > 0) {
      classBadges.append(badge(`class ${i + 1}: ${CLASS_LABELS[i] ?? ""}`, "class"));
    }
  });
  panel.append(classBadges);

  const factorBadges = el("div", { class: "badges badges-factor" });
  let any = false;
  assess.factor.forEach((bit, i) => {
    if (bit === 1) {
      any = true;
      factorBadges.append(badge(FACTOR_LABELS[i] ?? `factor ${i + 1}`, "factor"));
    }
  });
  if (!any) {
    factorBadges.append(el("p", { class: "all-clear" }, ["No risk factors identified."]));
  }
  panel.append(factorBadges);

  if (assess.warnings.length > 0) {
    const list = el("ul", { class: "warnings" });
    for (const w of assess.warnings) list.append(el("li", {}, [w]));
    panel.append(list);
  }
  return panel;
}

/** Baseline and hypothetical side by side. With no overlay the service is
 * asked the same question twice, so the two panels come out identical. */
export function renderComparison(
  baseline: AssessResponse,
  hypothetical: AssessResponse,
): HTMLElement {
  const wrap = el("div", { class: "comparison" });
  wrap.append(renderProfilePanel(baseline, "Baseline"));
  wrap.append(renderProfilePanel(hypothetical, "What-if"));
  return wrap;
}

function section(title: string, open: boolean, children: (Node | string)[]): HTMLElement {
  const details = el("details", open ? { open: "" } : {});
  details.append(el("summary", {}, [title]));
  for (const child of children) details.append(typeof child === "string" ? el("p", {}, [child]) : child);
  return details;
}

/** The four recommendation dimensions as collapsible sections, in the order
 * the engine assembles them: goals, information, explanations, action plan.
 * Block order inside each section is the service's; nothing is re-sorted. */
export function renderRecommendation(rec: Recommendation): HTMLElement {
  const root = el("section", { class: "recommendation" });

  const goalParas: HTMLElement[] = [];
  for (const goal of rec.goals) goalParas.push(el("p", { class: "goal-strategic" }, [goal]));
  for (const block of rec.blocks)
    goalParas.push(el("p", { class: "goal-tactical" }, [block.tactical_goal]));
  root.append(section("Goal", true, goalParas));

  const infoParas: HTMLElement[] = [el("p", { class: "category-statement" }, [rec.category_statement])];
  for (const block of rec.blocks) infoParas.push(el("p", {}, [block.information]));
  root.append(section("Information", false, infoParas));

  const explItems: HTMLElement[] = [];
  if (rec.blocks.length === 1) {
    const only = rec.blocks[0]!;
    explItems.push(el("p", {}, [only.explanation]));
  } else if (rec.blocks.length > 1) {
    const list = el("ol", { class: "explanations" });
    for (const block of rec.blocks) list.append(el("li", {}, [block.explanation]));
    explItems.push(list);
  }
  root.append(section("Explanation", false, explItems));

  const planItems: HTMLElement[] = [];
  for (const block of rec.blocks) {
    planItems.push(el("h4", { class: "plan-factor" }, [block.name]));
    planItems.push(el("p", {}, [block.plan]));
  }
  root.append(section("Plan of actions", false, planItems));

  return root;
}
