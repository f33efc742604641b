/**
 * Consistency dashboard: renders an analysis report exactly as the service
 * produced it. No agreement value is recomputed client-side; the kappa
 * decimals land in the table verbatim. The color thresholds are a
 * presentation convention only (documented in the footnote).
 */

import type { AnalysisReportOut, ReportEntryOut } from './types.js'

export type KappaBand = 'high' | 'mid' | 'low'

/** >= 0.8 green, 0.4..0.8 amber, < 0.4 red; UI convention, not a standard. */
export function kappaBand(decimal: string): KappaBand {
  const value = parseFloat(decimal)
  if (value >= 0.8) return 'high'
  if (value >= 0.4) return 'mid'
  return 'low'
}

function looksLikeReport(report: unknown): report is AnalysisReportOut {
  const r = report as AnalysisReportOut
  return (
    !!r &&
    typeof r.format_version === 'number' &&
    Array.isArray(r.entries) &&
    Array.isArray(r.not_assessable)
  )
}

export function renderDashboard(root: HTMLElement, report: unknown): void {
  if (!looksLikeReport(report)) {
    root.innerHTML = '<div class="banner banner-error" data-role="schema-banner">' +
      'This file is not a prefkit analysis report (schema mismatch).</div>'
    return
  }
  if (report.entries.length === 0 && report.not_assessable.length === 0) {
    root.innerHTML = '<p class="empty-state" data-role="empty-state">' +
      'Nothing to show yet: analyze a judgment file to see per-annotator consistency.</p>'
    return
  }

  const sections: string[] = []
  sections.push(renderTable(report))
  for (const entry of report.entries) {
    if (entry.scores && Object.keys(entry.scores).length > 0) {
      sections.push(renderScores(entry))
    }
  }
  if (report.not_assessable.length > 0) {
    sections.push(renderNotAssessable(report))
  }
  const warning = report.entries.find((e) => e.warning)?.warning
  if (warning) {
    sections.push(`<div class="banner banner-warn">${escapeHtml(warning)}</div>`)
  }
  sections.push(
    '<p class="footnote">Color bands (&#8805;0.8 green, 0.4&#8211;0.8 amber, &lt;0.4 red) ' +
      'are a display convention of this dashboard, not part of the measure.</p>',
  )
  root.innerHTML = sections.join('\n')
}

function renderTable(report: AnalysisReportOut): string {
  const rows = report.entries
    .map((entry) => {
      const band = kappaBand(entry.kappa.decimal)
      return (
        `<tr data-role="kappa-row" data-annotator="${escapeHtml(entry.annotator)}">` +
        `<td>${escapeHtml(entry.annotator)}</td>` +
        `<td>${escapeHtml(entry.criterion)}</td>` +
        `<td>${entry.triples_transitive}/${entry.triples_total}</td>` +
        `<td title="${escapeHtml(entry.p_e.decimal)}">${escapeHtml(entry.p_e.exact)}</td>` +
        `<td class="kappa kappa-${band}" title="exact ${escapeHtml(entry.kappa.exact)}">` +
        `${escapeHtml(entry.kappa.decimal)}</td>` +
        '</tr>'
      )
    })
    .join('')
  return `
    <table class="report-table" data-role="report-table">
      <thead>
        <tr><th>Annotator</th><th>Criterion</th><th>P(A)</th><th>P(E)</th><th>K</th></tr>
      </thead>
      <tbody>${rows}</tbody>
    </table>
  `
}

function renderScores(entry: ReportEntryOut): string {
  const scores = entry.scores as Record<string, number>
  const max = Math.max(...Object.values(scores), 1)
  const bars = Object.entries(scores)
    .sort(([a], [b]) => a.localeCompare(b))
    .map(
      ([item, value]) =>
        `<div class="score-row" data-role="score-bar" data-item="${escapeHtml(item)}">` +
        `<span class="score-label">${escapeHtml(item)}</span>` +
        `<span class="score-bar" style="width:${(value / max) * 100}%"></span>` +
        `<span class="score-value">${value}</span>` +
        '</div>',
    )
    .join('')
  return `
    <section class="scores" data-role="scores" data-annotator="${escapeHtml(entry.annotator)}">
      <h3>Scores: ${escapeHtml(entry.annotator)} / ${escapeHtml(entry.criterion)}</h3>
      ${bars}
    </section>
  `
}

function renderNotAssessable(report: AnalysisReportOut): string {
  const rows = report.not_assessable
    .map(
      (n) =>
        `<li data-role="not-assessable">${escapeHtml(n.annotator)} / ${escapeHtml(n.criterion)}: ` +
        `${escapeHtml(n.reason)}</li>`,
    )
    .join('')
  return `<section class="not-assessable"><h3>Not assessable</h3><ul>${rows}</ul></section>`
}

function escapeHtml(text: string): string {
  return text
    .replaceAll('&', '&amp;')
    .replaceAll('<', '&lt;')
    .replaceAll('>', '&gt;')
    .replaceAll('"', '&quot;')
}
