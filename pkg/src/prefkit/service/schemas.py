"""Request/response models for the HTTP API."""

from __future__ import annotations

from typing import Literal

from pydantic import BaseModel, Field

RelationName = Literal["left", "right", "tie"]


class PairOut(BaseModel):
    left: str
    right: str


class StatsOut(BaseModel):
    n_items: int
    pairs_total: int
    pairs_asked: int
    pairs_inferred: int
    savings_ratio: float


class CreateSessionRequest(BaseModel):
    items: list[str]
    mode: Literal["weak", "strict"] = "weak"
    strategy: Literal["random", "insertion"] = "random"
    seed: int = 0
    annotator: str | None = None
    criterion: str | None = None


class CreateSessionResponse(BaseModel):
    session_id: str
    first_pair: PairOut | None
    stats: StatsOut


class NextPairResponse(BaseModel):
    next: PairOut | None
    done: bool
    stats: StatsOut


class JudgmentIn(BaseModel):
    left: str
    right: str
    relation: RelationName


class InferredPairOut(BaseModel):
    left: str
    right: str
    relation: RelationName


class SubmitJudgmentResponse(BaseModel):
    inferred: list[InferredPairOut]
    next: PairOut | None
    done: bool
    stats: StatsOut


class RelationPairOut(BaseModel):
    left: str
    right: str
    relation: RelationName


class RelationResponse(BaseModel):
    items: list[str]
    annotator: str | None
    criterion: str | None
    pairs: list[RelationPairOut]


class TranscriptEntryOut(BaseModel):
    left: str
    right: str
    relation: RelationName
    source: Literal["asked", "inferred"]


class TranscriptResponse(BaseModel):
    session_id: str
    annotator: str | None
    criterion: str | None
    entries: list[TranscriptEntryOut]


class SessionSummaryOut(BaseModel):
    session_id: str
    status: Literal["active", "done"]
    mode: Literal["weak", "strict"]
    strategy: Literal["random", "insertion"]
    created_at: str
    stats: StatsOut


class AnalyzeRequest(BaseModel):
    content: str = Field(description="the judgment file body, verbatim")
    format: Literal["csv", "json"] = "csv"
    mode: Literal["weak", "strict"] = "weak"
    conflicts: Literal["error", "keep-latest"] = "error"
    blocks: list[list[str]] | None = None


class HealthResponse(BaseModel):
    status: str
    version: str


class ErrorBody(BaseModel):
    error: str
    detail: str
