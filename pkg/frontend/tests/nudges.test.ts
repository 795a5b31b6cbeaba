import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { renderNudgeCards, renderRecommendations } from "../src/nudges.js";
import type { NudgesPayload, RecommendPayload } from "../src/types.js";
import { makeFetch, recorded, resultOf } from "./helpers.js";

const nudges = resultOf<NudgesPayload>("nudges_echo");

describe("nudge panel", () => {
  it("reproduces the diagnose output: kind, diagnosis label, message", () => {
    const html = renderNudgeCards(nudges);
    expect(nudges.nudges.length).toBeGreaterThan(0);
    for (const nudge of nudges.nudges) {
      expect(html).toContain(`data-kind="${nudge.kind}"`);
      expect(html).toContain(nudge.mevir_diagnosis);
      expect(html).toContain(`severity ${nudge.severity.toFixed(2)}`);
    }
    expect(html).toContain("confirmation");
    expect(html).toContain("Corruption of Path 2");
  });

  it("shows the lattice insularity the service reported", () => {
    const html = renderNudgeCards(nudges);
    expect(nudges.insularity).toBe(1.0);
    expect(html).toContain(`insularity: <b>${(nudges.insularity as number).toFixed(2)}</b>`);
  });

  it("offers a recommendation shortcut for the claim's topic", () => {
    const html = renderNudgeCards(nudges);
    expect(html).toContain('class="recommend-shortcut" data-topic="politics"');
  });

  it("renders the empty state for a clean session", () => {
    const html = renderNudgeCards({ session_id: "s", nudges: [] });
    expect(html).toContain("No epistemic warnings");
  });
});

describe("recommendation shortcut", () => {
  it("the shortcut click path fetches and renders exactly the service list", async () => {
    const { fetchFn, log } = makeFetch([
      {
        method: "GET",
        url: "/api/recommend?topic=politics&k=3&min_reputation=0.5",
        respond: recorded("recommend_politics"),
      },
    ]);
    const api = new ApiClient("", fetchFn);
    const payload = (await api.recommend("politics")).result as RecommendPayload;
    expect(log[0].url).toContain("topic=politics");
    const html = renderRecommendations(payload);
    for (const sid of payload.recommendations) {
      expect(html).toContain(`data-source-id="${sid}">${sid}</li>`);
    }
    // order preserved exactly as served
    const order = [...html.matchAll(/data-source-id="([^"]+)"/g)].map((m) => m[1]);
    expect(order).toEqual(payload.recommendations);
  });
});
