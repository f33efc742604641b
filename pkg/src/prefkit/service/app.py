"""HTTP boundary: annotation sessions and dataset analysis over JSON.

All endpoints are synchronous and rely on a per-session lock, so concurrent
submits against one session serialize; the loser of a race on the same pair
gets a 409. Analysis is stateless and freely parallel. Error bodies are
uniformly ``{"error": <type>, "detail": <message>}``.
"""

from __future__ import annotations

from pathlib import Path

from fastapi import FastAPI, Request, Response
from fastapi.exceptions import RequestValidationError
from fastapi.responses import JSONResponse
from fastapi.staticfiles import StaticFiles

from .. import __version__
from ..analysis import analyze, render_report_json
from ..errors import (
    PairAlreadyDetermined,
    PrefkitError,
    SessionNotDone,
)
from ..formats import parse_judgments
from ..model import ConflictPolicy, Mode, Relation
from ..scheduler import Session, Strategy
from .schemas import (
    AnalyzeRequest,
    CreateSessionRequest,
    CreateSessionResponse,
    HealthResponse,
    InferredPairOut,
    JudgmentIn,
    NextPairResponse,
    PairOut,
    RelationPairOut,
    RelationResponse,
    SessionSummaryOut,
    StatsOut,
    SubmitJudgmentResponse,
    TranscriptEntryOut,
    TranscriptResponse,
)
from .store import SessionHandle, SessionStore

_CONFLICT_STATUS = (PairAlreadyDetermined, SessionNotDone)


class UnknownSession(PrefkitError):
    def __init__(self, session_id: str):
        self.session_id = session_id
        super().__init__(f"no session with id {session_id!r}")


def _stats_out(session: Session) -> StatsOut:
    s = session.stats()
    return StatsOut(
        n_items=s.n_items,
        pairs_total=s.pairs_total,
        pairs_asked=s.pairs_asked,
        pairs_inferred=s.pairs_inferred,
        savings_ratio=s.savings_ratio,
    )


def _pair_out(pair: tuple[str, str] | None) -> PairOut | None:
    return PairOut(left=pair[0], right=pair[1]) if pair else None


def create_app(
    journal_dir: str | Path | None = None,
    static_dir: str | Path | None = None,
) -> FastAPI:
    app = FastAPI(title="prefkit", version=__version__)
    store = SessionStore(journal_dir=journal_dir)
    app.state.store = store

    @app.exception_handler(PrefkitError)
    def prefkit_error_handler(request: Request, exc: PrefkitError) -> JSONResponse:
        if isinstance(exc, UnknownSession):
            status = 404
        elif isinstance(exc, _CONFLICT_STATUS):
            status = 409
        else:
            status = 400
        return JSONResponse(
            status_code=status,
            content={"error": type(exc).__name__, "detail": str(exc)},
        )

    @app.exception_handler(RequestValidationError)
    def validation_error_handler(request: Request, exc: RequestValidationError) -> JSONResponse:
        return JSONResponse(
            status_code=422,
            content={"error": "ValidationError", "detail": str(exc.errors())},
        )

    def _handle_or_404(session_id: str) -> SessionHandle:
        handle = store.get(session_id)
        if handle is None:
            raise UnknownSession(session_id)
        return handle

    @app.get("/health", response_model=HealthResponse)
    def health() -> HealthResponse:
        return HealthResponse(status="ok", version=__version__)

    @app.post("/sessions", response_model=CreateSessionResponse, status_code=201)
    def create_session(request: CreateSessionRequest) -> CreateSessionResponse:
        handle = store.create(
            items=request.items,
            mode=Mode(request.mode),
            strategy=Strategy(request.strategy),
            seed=request.seed,
            annotator=request.annotator,
            criterion=request.criterion,
        )
        return CreateSessionResponse(
            session_id=handle.session_id,
            first_pair=_pair_out(handle.session.next_pair()),
            stats=_stats_out(handle.session),
        )

    @app.get("/sessions/{session_id}", response_model=SessionSummaryOut)
    def session_summary(session_id: str) -> SessionSummaryOut:
        handle = _handle_or_404(session_id)
        with handle.lock:
            return SessionSummaryOut(
                session_id=handle.session_id,
                status=handle.session.status,
                mode=handle.session.mode.value,
                strategy=handle.session.strategy.value,
                created_at=handle.created_at.isoformat(),
                stats=_stats_out(handle.session),
            )

    @app.get("/sessions/{session_id}/next", response_model=NextPairResponse)
    def next_pair(session_id: str) -> NextPairResponse:
        handle = _handle_or_404(session_id)
        with handle.lock:
            pair = handle.session.next_pair()
            return NextPairResponse(
                next=_pair_out(pair),
                done=handle.session.done,
                stats=_stats_out(handle.session),
            )

    @app.post("/sessions/{session_id}/judgments", response_model=SubmitJudgmentResponse)
    def submit_judgment(session_id: str, judgment: JudgmentIn) -> SubmitJudgmentResponse:
        handle = _handle_or_404(session_id)
        with handle.lock:
            inferred = handle.session.record(
                judgment.left, judgment.right, Relation(judgment.relation)
            )
            store.journal_record(
                handle.session_id, judgment.left, judgment.right, Relation(judgment.relation)
            )
            return SubmitJudgmentResponse(
                inferred=[
                    InferredPairOut(left=pair[0], right=pair[1], relation=rel.value)
                    for pair, rel in inferred
                ],
                next=_pair_out(handle.session.next_pair()),
                done=handle.session.done,
                stats=_stats_out(handle.session),
            )

    @app.get("/sessions/{session_id}/relation", response_model=RelationResponse)
    def final_relation(session_id: str) -> RelationResponse:
        handle = _handle_or_404(session_id)
        with handle.lock:
            relation = handle.session.final_relation()
        return RelationResponse(
            items=sorted(relation.items),
            annotator=relation.annotator,
            criterion=relation.criterion,
            pairs=[
                RelationPairOut(left=a, right=b, relation=rel.value)
                for (a, b), rel in sorted(relation.pairs.items())
            ],
        )

    @app.get("/sessions/{session_id}/stats", response_model=StatsOut)
    def session_stats(session_id: str) -> StatsOut:
        handle = _handle_or_404(session_id)
        with handle.lock:
            return _stats_out(handle.session)

    @app.get("/sessions/{session_id}/transcript", response_model=TranscriptResponse)
    def transcript(session_id: str) -> TranscriptResponse:
        handle = _handle_or_404(session_id)
        with handle.lock:
            entries = [
                TranscriptEntryOut(
                    left=j.left, right=j.right, relation=j.relation.value, source=j.source
                )
                for j in handle.session.transcript()
            ]
            return TranscriptResponse(
                session_id=handle.session_id,
                annotator=handle.session.annotator,
                criterion=handle.session.criterion,
                entries=entries,
            )

    @app.post("/analyze")
    def analyze_dataset(request: AnalyzeRequest) -> Response:
        dataset = parse_judgments(request.content, request.format)
        report = analyze(
            dataset,
            mode=Mode(request.mode),
            conflict_policy=ConflictPolicy(request.conflicts),
            blocks=request.blocks,
        )
        # Exact bytes of the CLI's JSON output, for byte-level parity.
        return Response(content=render_report_json(report), media_type="application/json")

    if static_dir is not None:
        app.mount("/", StaticFiles(directory=str(static_dir), html=True), name="ui")

    return app
