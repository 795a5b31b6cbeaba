/** Nudge cards: the diagnose output rendered for a human, newest fetch on
 * top, each card naming the bias, its diagnosis label, and a shortcut to
 * diverse authorities on the claim's topic. Pure renderers over payloads.
 */

import { escapeHtml } from "./lattice_view.js";
import type { NudgesPayload, RecommendPayload } from "./types.js";

export function renderNudgeCards(payload: NudgesPayload): string {
  if (payload.nudges.length === 0) {
    return `<div class="nudges empty" data-session-id="${escapeHtml(payload.session_id)}">` +
      `No epistemic warnings for this session.</div>`;
  }
  const cards = payload.nudges
    .map(
      (n) =>
        `<div class="nudge-card nudge-${escapeHtml(n.kind)}" data-kind="${escapeHtml(n.kind)}">` +
        `<div class="nudge-head"><b>${escapeHtml(n.kind)}</b>` +
        `<span class="severity">severity ${n.severity.toFixed(2)}</span></div>` +
        `<div class="diagnosis">${escapeHtml(n.mevir_diagnosis)}</div>` +
        `<p class="message">${escapeHtml(n.message)}</p>` +
        (n.recommend_topic
          ? `<button class="recommend-shortcut" data-topic="${escapeHtml(n.recommend_topic)}">` +
            `View credible voices on “${escapeHtml(n.recommend_topic)}”</button>`
          : "") +
        `</div>`,
    )
    .join("\n");
  const insularity =
    payload.insularity !== undefined
      ? `<div class="insularity">lattice insularity: <b>${payload.insularity.toFixed(2)}</b></div>`
      : "";
  return `<div class="nudges" data-session-id="${escapeHtml(payload.session_id)}">${insularity}${cards}</div>`;
}

export function renderRecommendations(payload: RecommendPayload): string {
  if (payload.recommendations.length === 0) {
    return `<div class="recommendations empty">No qualifying authorities for “${escapeHtml(payload.topic)}”.</div>`;
  }
  const items = payload.recommendations
    .map((sid) => `<li class="recommended-source" data-source-id="${escapeHtml(sid)}">${escapeHtml(sid)}</li>`)
    .join("");
  return `<div class="recommendations"><h4>Diverse authorities on “${escapeHtml(payload.topic)}”</h4><ol>${items}</ol></div>`;
}
