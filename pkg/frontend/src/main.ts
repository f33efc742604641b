/** Page wiring: annotate/dashboard tabs, session forms, report upload. */

import { ApiError, PrefkitClient } from './api.js'
import { renderDashboard } from './dashboard.js'
import { SessionRunner } from './session.js'
import type { ModeName, StrategyName } from './types.js'

const SESSION_KEY = 'prefkit.session_id'

function byId<T extends HTMLElement>(id: string): T {
  const el = document.getElementById(id)
  if (!el) throw new Error(`missing #${id}`)
  return el as T
}

export function bootstrap(): void {
  const client = new PrefkitClient('')
  const runner = new SessionRunner(client, byId('session-root'))

  for (const tab of document.querySelectorAll<HTMLButtonElement>('[data-tab]')) {
    tab.addEventListener('click', () => {
      for (const other of document.querySelectorAll('[data-tab]')) other.classList.remove('active')
      tab.classList.add('active')
      byId('annotate-panel').classList.toggle('hidden', tab.dataset.tab !== 'annotate')
      byId('dashboard-panel').classList.toggle('hidden', tab.dataset.tab !== 'dashboard')
    })
  }

  byId<HTMLFormElement>('session-form').addEventListener('submit', (event) => {
    event.preventDefault()
    const items = byId<HTMLTextAreaElement>('items-input')
      .value.split('\n')
      .map((line) => line.trim())
      .filter(Boolean)
    const mode = byId<HTMLSelectElement>('mode-input').value as ModeName
    const strategy = byId<HTMLSelectElement>('strategy-input').value as StrategyName
    const seed = parseInt(byId<HTMLInputElement>('seed-input').value || '0', 10)
    const annotator = byId<HTMLInputElement>('annotator-input').value.trim() || undefined
    const criterion = byId<HTMLInputElement>('criterion-input').value.trim() || undefined
    runner
      .start({ items, mode, strategy, seed, annotator, criterion })
      .then((sessionId) => {
        localStorage.setItem(SESSION_KEY, sessionId)
        byId('session-error').textContent = ''
      })
      .catch((error) => {
        byId('session-error').textContent =
          error instanceof ApiError ? `${error.message} — ${error.guidance}` : String(error)
      })
  })

  document.addEventListener('keydown', (event) => {
    if (byId('annotate-panel').classList.contains('hidden')) return
    const target = event.target as HTMLElement | null
    if (target && (target.tagName === 'INPUT' || target.tagName === 'TEXTAREA')) return
    runner.handleKey(event)
  })

  // refresh mid-session: pick the run back up from server state
  const stored = localStorage.getItem(SESSION_KEY)
  if (stored) {
    runner.resume(stored).catch(() => localStorage.removeItem(SESSION_KEY))
  }

  byId<HTMLInputElement>('report-file').addEventListener('change', async (event) => {
    const input = event.target as HTMLInputElement
    const file = input.files?.[0]
    if (!file) return
    const content = await file.text()
    const format = file.name.toLowerCase().endsWith('.json') ? 'json' : 'csv'
    const mode = byId<HTMLSelectElement>('dashboard-mode').value as ModeName
    try {
      const report = await client.analyze({ content, format, mode, conflicts: 'error' })
      renderDashboard(byId('dashboard-root'), report)
    } catch (error) {
      byId('dashboard-root').innerHTML = `<div class="banner banner-error">${
        error instanceof ApiError ? `${error.kind}: ${error.message}` : 'upload failed'
      }</div>`
    }
  })
}

if (typeof document !== 'undefined' && document.getElementById('session-root')) {
  bootstrap()
}
