import { describe, expect, it } from "vitest";

import type { AssessResponse, Recommendation, RecommendResponse } from "../src/types.js";
import { renderComparison, renderProfilePanel, renderRecommendation } from "../src/view.js";
import assessBlankJson from "./fixtures/assess_blank.json";
import assessSbp128Json from "./fixtures/assess_worked_example_sbp128.json";
import assessUrgentJson from "./fixtures/assess_urgent.json";
import assessWorkedJson from "./fixtures/assess_worked_example.json";
import assessNonsmokerJson from "./fixtures/assess_worked_example_nonsmoker.json";
import recommendBlankJson from "./fixtures/recommend_blank.json";
import recommendUrgentJson from "./fixtures/recommend_urgent.json";
import recommendWorkedJson from "./fixtures/recommend_worked_example.json";

const assessWorked = assessWorkedJson as unknown as AssessResponse;
const assessNonsmoker = assessNonsmokerJson as unknown as AssessResponse;
const assessSbp128 = assessSbp128Json as unknown as AssessResponse;
const assessBlank = assessBlankJson as unknown as AssessResponse;
const assessUrgent = assessUrgentJson as unknown as AssessResponse;
const recWorked = (recommendWorkedJson as unknown as RecommendResponse).recommendation;
const recBlank = (recommendBlankJson as unknown as RecommendResponse).recommendation;
const recUrgent = (recommendUrgentJson as unknown as RecommendResponse).recommendation;

function badgeTexts(panel: HTMLElement, selector: string): string[] {
  return [...panel.querySelectorAll(selector)].map((n) => n.textContent ?? "");
}

describe("profile panel", () => {
  it("shows the recorded category and badges for the worked example", () => {
    const panel = renderProfilePanel(assessWorked, "Assessment");
    expect(panel.querySelector(".gauge-category")?.textContent).toBe("high");
    expect(panel.querySelector(".gauge")?.getAttribute("data-category")).toBe("high");
    expect(panel.querySelector(".gauge")?.textContent).toContain("5.58%");

    const classes = badgeTexts(panel, ".badge-class");
    expect(classes).toEqual(["class 2: lifestyle risks", "class 3: biological risks"]);

    const factors = badgeTexts(panel, ".badge-factor");
    expect(factors).toHaveLength(5);
    expect(factors).toContain("smoking");
    expect(factors).toContain("high systolic blood pressure");
    expect(factors).toContain("obesity");
  });

  it("conveys the category as text for every recorded response, not color alone", () => {
    for (const fixture of [assessWorked, assessNonsmoker, assessSbp128, assessBlank, assessUrgent]) {
      const panel = renderProfilePanel(fixture, "Assessment");
      const category = panel.querySelector(".gauge-category")?.textContent ?? "";
      expect(category.length).toBeGreaterThan(0);
      expect(panel.querySelector(".gauge")?.getAttribute("data-category")).toBe(fixture.category);
    }
  });

  it("renders the all-clear state for a blank questionnaire", () => {
    const panel = renderProfilePanel(assessBlank, "Assessment");
    expect(panel.textContent).toContain("No risk factors identified.");
    expect(panel.querySelectorAll(".badge-factor")).toHaveLength(0);
    expect(panel.querySelector(".gauge-category")?.textContent).toBe("not assessed");
    expect(panel.querySelector(".urgent-banner")).toBeNull();
  });

  it("raises the urgent banner when the angina factor is reported", () => {
    const panel = renderProfilePanel(assessUrgent, "Assessment");
    const banner = panel.querySelector(".urgent-banner");
    expect(banner).not.toBeNull();
    expect(banner?.getAttribute("role")).toBe("alert");
    expect(banner?.textContent).toContain("emergency services");
    expect(renderProfilePanel(assessWorked, "Assessment").querySelector(".urgent-banner")).toBeNull();
  });

  it("surfaces service warnings verbatim", () => {
    const withWarning = { ...assessWorked, warnings: ["x12: reading looks implausible"] };
    const panel = renderProfilePanel(withWarning, "Assessment");
    expect(panel.querySelector(".warnings")?.textContent).toContain("x12: reading looks implausible");
  });
});

describe("what-if comparison", () => {
  it("renders identical panels when nothing was overlaid", () => {
    const wrap = renderComparison(assessWorked, assessWorked);
    const [baseline, hypothetical] = [...wrap.querySelectorAll(".panel")];
    expect(baseline).toBeDefined();
    expect(hypothetical).toBeDefined();
    const strip = (node: Element) => node.innerHTML.replace(/<h3>.*?<\/h3>/, "");
    expect(strip(hypothetical!)).toBe(strip(baseline!));
  });

  it("clears the blood-pressure badge in the hypothetical panel for the 128 overlay", () => {
    const wrap = renderComparison(assessWorked, assessSbp128);
    const [baseline, hypothetical] = [...wrap.querySelectorAll(".panel")] as HTMLElement[];
    expect(badgeTexts(baseline!, ".badge-factor")).toContain("high systolic blood pressure");
    expect(badgeTexts(hypothetical!, ".badge-factor")).not.toContain("high systolic blood pressure");
  });

  it("shows a strictly lower recorded risk when smoking is toggled off", () => {
    expect(assessNonsmoker.cvrisk).not.toBeNull();
    expect(assessWorked.cvrisk).not.toBeNull();
    expect(assessNonsmoker.cvrisk!).toBeLessThan(assessWorked.cvrisk!);

    const wrap = renderComparison(assessWorked, assessNonsmoker);
    const [baseline, hypothetical] = [...wrap.querySelectorAll(".panel")] as HTMLElement[];
    expect(baseline!.querySelector(".gauge")?.textContent).toContain(`${assessWorked.cvrisk}%`);
    expect(hypothetical!.querySelector(".gauge")?.textContent).toContain(`${assessNonsmoker.cvrisk}%`);
  });
});

describe("recommendation view", () => {
  const sectionTitles = (rec: Recommendation): string[] =>
    [...renderRecommendation(rec).querySelectorAll("summary")].map((n) => n.textContent ?? "");

  it("lays out the four dimensions in pipeline order", () => {
    for (const rec of [recWorked, recBlank, recUrgent]) {
      expect(sectionTitles(rec)).toEqual(["Goal", "Information", "Explanation", "Plan of actions"]);
    }
  });

  it("keeps the service's block order, urgent first", () => {
    const root = renderRecommendation(recUrgent);
    const planHeadings = [...root.querySelectorAll(".plan-factor")].map((n) => n.textContent);
    expect(planHeadings[0]).toBe("angina symptoms with deterioration");
  });

  it("matches the worked example snapshot", () => {
    expect(renderRecommendation(recWorked).innerHTML).toMatchSnapshot();
  });

  it("matches the blank questionnaire snapshot", () => {
    expect(renderRecommendation(recBlank).innerHTML).toMatchSnapshot();
  });

  it("matches the urgent case snapshot", () => {
    expect(renderRecommendation(recUrgent).innerHTML).toMatchSnapshot();
  });
});
