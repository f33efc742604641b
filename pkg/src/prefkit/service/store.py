"""In-memory session registry with an optional append-only journal.

Sessions live in process memory; when a journal directory is configured each
mutation is appended to ``<session_id>.jsonl`` and the whole store can be
rebuilt by replaying those files, which is all the durability a single
annotation campaign needs.
"""

from __future__ import annotations

import json
import threading
import uuid
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path

from ..model import Mode, Relation
from ..scheduler import Session, Strategy


@dataclass
class SessionHandle:
    session_id: str
    session: Session
    created_at: datetime
    lock: threading.Lock = field(default_factory=threading.Lock)


class SessionStore:
    def __init__(self, journal_dir: str | Path | None = None):
        self._handles: dict[str, SessionHandle] = {}
        self._registry_lock = threading.RLock()
        self._journal_dir = Path(journal_dir) if journal_dir else None
        if self._journal_dir:
            self._journal_dir.mkdir(parents=True, exist_ok=True)
            self._replay()

    def create(
        self,
        items: list[str],
        mode: Mode,
        strategy: Strategy,
        seed: int,
        annotator: str | None = None,
        criterion: str | None = None,
        session_id: str | None = None,
        journal: bool = True,
    ) -> SessionHandle:
        session = Session(
            items, mode=mode, strategy=strategy, seed=seed, annotator=annotator, criterion=criterion
        )
        handle = SessionHandle(
            session_id=session_id or uuid.uuid4().hex,
            session=session,
            created_at=datetime.now(timezone.utc),
        )
        with self._registry_lock:
            if handle.session_id in self._handles:
                raise ValueError(f"session id collision: {handle.session_id}")
            self._handles[handle.session_id] = handle
        if journal:
            self._append(
                handle.session_id,
                {
                    "event": "create",
                    "items": list(items),
                    "mode": mode.value,
                    "strategy": strategy.value,
                    "seed": seed,
                    "annotator": annotator,
                    "criterion": criterion,
                    "created_at": handle.created_at.isoformat(),
                },
            )
        return handle

    def get(self, session_id: str) -> SessionHandle | None:
        with self._registry_lock:
            return self._handles.get(session_id)

    def list_handles(self) -> list[SessionHandle]:
        with self._registry_lock:
            return sorted(self._handles.values(), key=lambda h: h.created_at.isoformat())

    def journal_record(self, session_id: str, left: str, right: str, relation: Relation) -> None:
        self._append(
            session_id,
            {"event": "record", "left": left, "right": right, "relation": relation.value},
        )

    def _append(self, session_id: str, event: dict) -> None:
        if not self._journal_dir:
            return
        path = self._journal_dir / f"{session_id}.jsonl"
        with path.open("a", encoding="utf-8") as fh:
            fh.write(json.dumps(event, ensure_ascii=False) + "\n")
            fh.flush()

    def _replay(self) -> None:
        assert self._journal_dir is not None
        for path in sorted(self._journal_dir.glob("*.jsonl")):
            events = [
                json.loads(line)
                for line in path.read_text(encoding="utf-8").splitlines()
                if line.strip()
            ]
            if not events or events[0].get("event") != "create":
                continue
            head = events[0]
            handle = self.create(
                items=head["items"],
                mode=Mode(head["mode"]),
                strategy=Strategy(head["strategy"]),
                seed=head["seed"],
                annotator=head.get("annotator"),
                criterion=head.get("criterion"),
                session_id=path.stem,
                journal=False,
            )
            handle.created_at = datetime.fromisoformat(head["created_at"])
            for event in events[1:]:
                if event.get("event") == "record":
                    handle.session.record(event["left"], event["right"], Relation(event["relation"]))
