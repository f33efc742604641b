/**
 * Wire types for the prefkit service API.
 *
 * The UI performs no agreement math: every number it shows comes straight
 * out of one of these payloads (exact rationals arrive pre-rendered as
 * `{exact, decimal}` string pairs).
 */

export type RelationName = 'left' | 'right' | 'tie'
export type ModeName = 'weak' | 'strict'
export type StrategyName = 'random' | 'insertion'

export interface PairOut {
  left: string
  right: string
}

export interface StatsOut {
  n_items: number
  pairs_total: number
  pairs_asked: number
  pairs_inferred: number
  savings_ratio: number
}

export interface CreateSessionRequest {
  items: string[]
  mode: ModeName
  strategy: StrategyName
  seed: number
  annotator?: string | null
  criterion?: string | null
}

export interface CreateSessionResponse {
  session_id: string
  first_pair: PairOut | null
  stats: StatsOut
}

export interface NextPairResponse {
  next: PairOut | null
  done: boolean
  stats: StatsOut
}

export interface InferredPairOut {
  left: string
  right: string
  relation: RelationName
}

export interface SubmitJudgmentResponse {
  inferred: InferredPairOut[]
  next: PairOut | null
  done: boolean
  stats: StatsOut
}

export interface SessionSummaryOut {
  session_id: string
  status: 'active' | 'done'
  mode: ModeName
  strategy: StrategyName
  created_at: string
  stats: StatsOut
}

export interface TranscriptEntryOut {
  left: string
  right: string
  relation: RelationName
  source: 'asked' | 'inferred'
}

export interface TranscriptResponse {
  session_id: string
  annotator: string | null
  criterion: string | null
  entries: TranscriptEntryOut[]
}

export interface RationalOut {
  exact: string
  decimal: string
}

export interface ReportEntryOut {
  annotator: string
  criterion: string
  mode: ModeName
  triples_total: number
  triples_transitive: number
  p_a: RationalOut
  p_e: RationalOut
  kappa: RationalOut
  warning: string | null
  scores: Record<string, number> | null
  score_scale: number | null
}

export interface NotAssessableOut {
  annotator: string
  criterion: string
  reason: string
}

export interface AnalysisReportOut {
  format_version: number
  mode: ModeName
  digest: Record<string, number>
  entries: ReportEntryOut[]
  not_assessable: NotAssessableOut[]
}

export interface AnalyzeRequest {
  content: string
  format: 'csv' | 'json'
  mode: ModeName
  conflicts: 'error' | 'keep-latest'
}

export interface ErrorBody {
  error: string
  detail: string
}
