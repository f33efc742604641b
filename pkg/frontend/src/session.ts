/**
 * Interactive session runner.
 *
 * Presents one undetermined pair at a time with three choices (left / right /
 * equal; equal is hidden in strict mode), submits the choice, surfaces every
 * pair the server inferred for free, and finishes when the server says done.
 * The current pair always comes from a server response, so a determined pair
 * can never be shown again, and a submit is in flight at most once.
 */

import { ApiError, PrefkitClient } from './api.js'
import type { ModeName, PairOut, RelationName, StatsOut } from './types.js'

export interface SessionStartConfig {
  items: string[]
  mode: ModeName
  strategy: 'random' | 'insertion'
  seed: number
  annotator?: string
  criterion?: string
}

const KEY_BINDINGS: Record<string, RelationName> = {
  ArrowLeft: 'left',
  ArrowRight: 'right',
  e: 'tie',
  E: 'tie',
}

export class SessionRunner {
  private readonly client: PrefkitClient
  private readonly root: HTMLElement
  private sessionId: string | null = null
  private mode: ModeName = 'weak'
  private current: PairOut | null = null
  private busy = false
  private submitted = 0

  constructor(client: PrefkitClient, root: HTMLElement) {
    this.client = client
    this.root = root
    this.renderShell()
  }

  get currentPair(): PairOut | null {
    return this.current
  }

  get judgmentsSubmitted(): number {
    return this.submitted
  }

  async start(config: SessionStartConfig): Promise<string> {
    const created = await this.client.createSession({
      items: config.items,
      mode: config.mode,
      strategy: config.strategy,
      seed: config.seed,
      annotator: config.annotator ?? null,
      criterion: config.criterion ?? null,
    })
    this.sessionId = created.session_id
    this.mode = config.mode
    this.submitted = 0
    this.showPair(created.first_pair, created.stats)
    return created.session_id
  }

  /** Reattach to a session already running on the server (page refresh). */
  async resume(sessionId: string): Promise<void> {
    const summary = await this.client.sessionSummary(sessionId)
    this.sessionId = sessionId
    this.mode = summary.mode
    this.submitted = summary.stats.pairs_asked
    const next = await this.client.nextPair(sessionId)
    if (next.done) {
      this.showDone(next.stats)
    } else {
      this.showPair(next.next, next.stats)
    }
  }

  async choose(relation: RelationName): Promise<void> {
    if (!this.sessionId || !this.current || this.busy) return
    if (relation === 'tie' && this.mode === 'strict') return
    this.busy = true
    const pair = this.current
    try {
      const result = await this.client.submitJudgment(this.sessionId, pair.left, pair.right, relation)
      this.submitted += 1
      for (const inferred of result.inferred) {
        this.toast(`inferred for free: ${describePair(inferred.left, inferred.right, inferred.relation)}`)
      }
      if (result.done) {
        this.showDone(result.stats)
      } else {
        this.showPair(result.next, result.stats)
      }
    } catch (error) {
      if (error instanceof ApiError) {
        this.toast(error.guidance, 'error')
        if (error.status === 409 || error.status === 404) {
          await this.refetch()
        }
      } else {
        this.toast('network error; retry', 'error')
      }
    } finally {
      this.busy = false
    }
  }

  handleKey(event: KeyboardEvent): void {
    const relation = KEY_BINDINGS[event.key]
    if (relation) {
      event.preventDefault()
      void this.choose(relation)
    }
  }

  private async refetch(): Promise<void> {
    if (!this.sessionId) return
    const next = await this.client.nextPair(this.sessionId)
    if (next.done) {
      this.showDone(next.stats)
    } else {
      this.showPair(next.next, next.stats)
    }
  }

  // -- rendering ------------------------------------------------------------

  private renderShell(): void {
    this.root.innerHTML = `
      <div class="pair-card hidden" data-role="pair-card">
        <p class="prompt">Which do you prefer?</p>
        <div class="pair-items">
          <button type="button" class="item-button" data-role="choose-left"></button>
          <button type="button" class="item-button" data-role="choose-right"></button>
        </div>
        <button type="button" class="tie-button" data-role="choose-tie">equally preferred</button>
        <p class="hint">keys: &#8592; left &nbsp; &#8594; right &nbsp; E equal</p>
      </div>
      <div class="done-card hidden" data-role="done-card"></div>
      <p class="progress" data-role="progress"></p>
      <p class="savings" data-role="savings"></p>
      <ul class="toasts" data-role="toasts"></ul>
    `
    this.part('choose-left').addEventListener('click', () => void this.choose('left'))
    this.part('choose-right').addEventListener('click', () => void this.choose('right'))
    this.part('choose-tie').addEventListener('click', () => void this.choose('tie'))
  }

  private part(role: string): HTMLElement {
    const el = this.root.querySelector<HTMLElement>(`[data-role="${role}"]`)
    if (!el) throw new Error(`missing element ${role}`)
    return el
  }

  private showPair(pair: PairOut | null, stats: StatsOut): void {
    this.current = pair
    this.updateCounters(stats)
    if (!pair) {
      this.showDone(stats)
      return
    }
    this.part('pair-card').classList.remove('hidden')
    this.part('done-card').classList.add('hidden')
    this.part('choose-left').textContent = pair.left
    this.part('choose-right').textContent = pair.right
    this.part('choose-tie').classList.toggle('hidden', this.mode === 'strict')
  }

  private showDone(stats: StatsOut): void {
    this.current = null
    this.updateCounters(stats)
    this.part('pair-card').classList.add('hidden')
    const done = this.part('done-card')
    done.classList.remove('hidden')
    done.innerHTML = `
      <h3>Session complete</h3>
      <p>${stats.pairs_asked} answered, ${stats.pairs_inferred} inferred
         of ${stats.pairs_total} pairs.</p>
    `
  }

  private updateCounters(stats: StatsOut): void {
    this.part('progress').textContent =
      `${stats.pairs_asked + stats.pairs_inferred} of ${stats.pairs_total} pairs determined ` +
      `(${stats.pairs_asked} answered)`
    this.part('savings').textContent = `${stats.pairs_inferred} inferred without asking`
  }

  private toast(message: string, kind: 'info' | 'error' = 'info'): void {
    const item = document.createElement('li')
    item.className = `toast toast-${kind}`
    item.textContent = message
    this.part('toasts').prepend(item)
  }
}

function describePair(left: string, right: string, relation: RelationName): string {
  if (relation === 'left') return `${left} over ${right}`
  if (relation === 'right') return `${right} over ${left}`
  return `${left} equals ${right}`
}
