/** Thin typed client for the prefkit service. */

import type {
  AnalysisReportOut,
  AnalyzeRequest,
  CreateSessionRequest,
  CreateSessionResponse,
  ErrorBody,
  NextPairResponse,
  RelationName,
  SessionSummaryOut,
  SubmitJudgmentResponse,
  TranscriptResponse,
} from './types.js'

export class ApiError extends Error {
  readonly status: number
  readonly kind: string

  constructor(status: number, body: ErrorBody) {
    super(body.detail)
    this.status = status
    this.kind = body.error
  }

  /** Human guidance for the two statuses annotators can actually hit. */
  get guidance(): string {
    if (this.status === 409) {
      return 'That pair was already answered or inferred; fetching the next one.'
    }
    if (this.status === 400) {
      return 'The service rejected the request; check the input and retry.'
    }
    if (this.status === 404) {
      return 'The session no longer exists on the server; start a new one.'
    }
    return 'Unexpected server error; retry in a moment.'
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, {
    headers: { 'content-type': 'application/json' },
    ...init,
  })
  if (!response.ok) {
    let body: ErrorBody
    try {
      body = (await response.json()) as ErrorBody
    } catch {
      body = { error: 'HttpError', detail: `status ${response.status}` }
    }
    throw new ApiError(response.status, body)
  }
  return (await response.json()) as T
}

export class PrefkitClient {
  constructor(private readonly base: string = '') {}

  createSession(req: CreateSessionRequest): Promise<CreateSessionResponse> {
    return request(`${this.base}/sessions`, { method: 'POST', body: JSON.stringify(req) })
  }

  sessionSummary(sessionId: string): Promise<SessionSummaryOut> {
    return request(`${this.base}/sessions/${sessionId}`)
  }

  nextPair(sessionId: string): Promise<NextPairResponse> {
    return request(`${this.base}/sessions/${sessionId}/next`)
  }

  submitJudgment(
    sessionId: string,
    left: string,
    right: string,
    relation: RelationName,
  ): Promise<SubmitJudgmentResponse> {
    return request(`${this.base}/sessions/${sessionId}/judgments`, {
      method: 'POST',
      body: JSON.stringify({ left, right, relation }),
    })
  }

  transcript(sessionId: string): Promise<TranscriptResponse> {
    return request(`${this.base}/sessions/${sessionId}/transcript`)
  }

  analyze(req: AnalyzeRequest): Promise<AnalysisReportOut> {
    return request(`${this.base}/analyze`, { method: 'POST', body: JSON.stringify(req) })
  }
}
