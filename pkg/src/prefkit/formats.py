"""Judgment file formats (v1) and exact-rational rendering helpers.

CSV grammar, header mandatory, UTF-8, one judgment per row::

    annotator,criterion,left,right,relation[,timestamp][,source]

The relation column reads from the row's perspective and the symbols follow
arithmetic, not prose: ``>`` means the left item is preferred, ``<`` means the
right item is preferred, ``~`` means equally preferred. Because every symbol
convention in this space has bitten someone, the unambiguous words ``left``,
``right`` and ``tie`` are accepted everywhere symbols are.

The JSON equivalent is an array of records with the same field names and the
word spelling of the relation. Lines starting with ``#`` in CSV are comments;
the writer emits ``# prefkit-judgments v1`` so files identify themselves.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from datetime import datetime
from fractions import Fraction
from typing import IO, Iterable

from .errors import ParseError, SelfPair, UnknownRelationSymbol
from .model import AnnotatorId, Criterion, ItemId, Judgment, Relation

FORMAT_VERSION = 1
_CSV_COMMENT = "# prefkit-judgments v1"

_RELATION_TOKENS = {
    ">": Relation.LEFT,
    "<": Relation.RIGHT,
    "~": Relation.TIE,
    "left": Relation.LEFT,
    "right": Relation.RIGHT,
    "tie": Relation.TIE,
}
_RELATION_SYMBOLS = {Relation.LEFT: ">", Relation.RIGHT: "<", Relation.TIE: "~"}

_BASE_COLUMNS = ("annotator", "criterion", "left", "right", "relation")
_OPTIONAL_COLUMNS = ("timestamp", "source")
_SOURCES = ("asked", "inferred")


@dataclass(frozen=True)
class Dataset:
    """A batch of judgments plus the item/annotator rosters they draw from.

    Rosters default to the union of what the judgments mention; pass them
    explicitly to analyze against a wider item set.
    """

    judgments: tuple[Judgment, ...]
    items: tuple[ItemId, ...] = field(default=())
    annotators: tuple[AnnotatorId, ...] = field(default=())

    def __post_init__(self) -> None:
        mentioned_items = {j.left for j in self.judgments} | {j.right for j in self.judgments}
        mentioned_annotators = {j.annotator for j in self.judgments}
        if not self.items:
            object.__setattr__(self, "items", tuple(sorted(mentioned_items)))
        elif not mentioned_items <= set(self.items):
            raise ValueError(
                f"judgments mention unrostered items {sorted(mentioned_items - set(self.items))!r}"
            )
        if not self.annotators:
            object.__setattr__(self, "annotators", tuple(sorted(mentioned_annotators)))
        elif not mentioned_annotators <= set(self.annotators):
            raise ValueError(
                f"judgments mention unrostered annotators {sorted(mentioned_annotators - set(self.annotators))!r}"
            )

    @property
    def criteria(self) -> tuple[Criterion, ...]:
        return tuple(sorted({j.criterion for j in self.judgments}))


def parse_relation_token(token: str, line: int) -> Relation:
    relation = _RELATION_TOKENS.get(token.strip().lower())
    if relation is None:
        raise UnknownRelationSymbol(line, token)
    return relation


def _parse_record(
    record: dict[str, str | None], line: int, *, strict_keys: Iterable[str] = ()
) -> Judgment:
    for key in strict_keys:
        if key not in _BASE_COLUMNS + _OPTIONAL_COLUMNS:
            raise ParseError(line, f"unknown field {key!r}")
    values = {}
    for name in _BASE_COLUMNS:
        value = record.get(name)
        if value is None or not str(value).strip():
            raise ParseError(line, f"missing value for {name!r}")
        values[name] = str(value).strip()
    if values["left"] == values["right"]:
        raise SelfPair(line, values["left"])
    relation = parse_relation_token(values["relation"], line)

    timestamp = None
    raw_timestamp = record.get("timestamp")
    if raw_timestamp is not None and str(raw_timestamp).strip():
        try:
            timestamp = datetime.fromisoformat(str(raw_timestamp).strip())
        except ValueError:
            raise ParseError(line, f"bad ISO-8601 timestamp {raw_timestamp!r}") from None

    source = record.get("source")
    source = str(source).strip() if source is not None and str(source).strip() else None
    if source is not None and source not in _SOURCES:
        raise ParseError(line, f"source must be one of {_SOURCES}, got {source!r}")

    return Judgment(
        annotator=values["annotator"],
        criterion=values["criterion"],
        left=values["left"],
        right=values["right"],
        relation=relation,
        timestamp=timestamp,
        source=source,
    )


def _decode(source: bytes | str | IO) -> str:
    if isinstance(source, bytes):
        return source.decode("utf-8")
    if isinstance(source, str):
        return source
    data = source.read()
    return data.decode("utf-8") if isinstance(data, bytes) else data


def parse_judgments_csv(source: bytes | str | IO) -> Dataset:
    text = _decode(source)
    judgments = []
    header: list[str] | None = None
    reader = csv.reader(io.StringIO(text))
    for row in reader:
        line = reader.line_num
        if not row or (row[0].lstrip().startswith("#") and header is None):
            continue
        cells = [cell.strip() for cell in row]
        if all(not cell for cell in cells):
            continue
        if header is None:
            header = [cell.lower() for cell in cells]
            missing = [name for name in _BASE_COLUMNS if name not in header]
            if missing:
                raise ParseError(line, f"header misses required columns {missing!r}")
            unknown = [name for name in header if name not in _BASE_COLUMNS + _OPTIONAL_COLUMNS]
            if unknown:
                raise ParseError(line, f"header has unknown columns {unknown!r}")
            continue
        if len(cells) != len(header):
            raise ParseError(line, f"expected {len(header)} columns, got {len(cells)}")
        judgments.append(_parse_record(dict(zip(header, cells)), line))
    if header is None:
        raise ParseError(1, "missing header row")
    return Dataset(judgments=tuple(judgments))


def parse_judgments_json(source: bytes | str | IO) -> Dataset:
    text = _decode(source)
    try:
        records = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.lineno, f"invalid JSON: {exc.msg}") from None
    if not isinstance(records, list):
        raise ParseError(1, "expected a JSON array of judgment records")
    judgments = []
    for index, record in enumerate(records, start=1):
        if not isinstance(record, dict):
            raise ParseError(index, "judgment record must be a JSON object")
        judgments.append(_parse_record(record, index, strict_keys=record.keys()))
    return Dataset(judgments=tuple(judgments))


def parse_judgments(source: bytes | str | IO, format: str) -> Dataset:
    """Parse a judgment file; ``format`` is ``"csv"`` or ``"json"``.

    Errors carry the offending line (CSV, 1-based physical line) or record
    index (JSON, 1-based).
    """
    if format == "csv":
        return parse_judgments_csv(source)
    if format == "json":
        return parse_judgments_json(source)
    raise ValueError(f"unknown judgment format {format!r}")


def write_judgments_csv(dataset: Dataset) -> bytes:
    with_timestamp = any(j.timestamp is not None for j in dataset.judgments)
    with_source = any(j.source is not None for j in dataset.judgments)
    columns = list(_BASE_COLUMNS)
    if with_timestamp:
        columns.append("timestamp")
    if with_source:
        columns.append("source")

    out = io.StringIO()
    out.write(_CSV_COMMENT + "\r\n")
    writer = csv.writer(out)
    writer.writerow(columns)
    for j in dataset.judgments:
        row = [j.annotator, j.criterion, j.left, j.right, _RELATION_SYMBOLS[j.relation]]
        if with_timestamp:
            row.append(j.timestamp.isoformat() if j.timestamp else "")
        if with_source:
            row.append(j.source or "")
        writer.writerow(row)
    return out.getvalue().encode("utf-8")


def write_judgments_json(dataset: Dataset) -> bytes:
    records = []
    for j in dataset.judgments:
        record: dict[str, str] = {
            "annotator": j.annotator,
            "criterion": j.criterion,
            "left": j.left,
            "right": j.right,
            "relation": j.relation.value,
        }
        if j.timestamp is not None:
            record["timestamp"] = j.timestamp.isoformat()
        if j.source is not None:
            record["source"] = j.source
        records.append(record)
    return (json.dumps(records, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def write_judgments(dataset: Dataset, format: str) -> bytes:
    if format == "csv":
        return write_judgments_csv(dataset)
    if format == "json":
        return write_judgments_json(dataset)
    raise ValueError(f"unknown judgment format {format!r}")


def sniff_format(path: str) -> str:
    """Guess csv/json from a filename extension, defaulting to csv."""
    return "json" if path.lower().endswith(".json") else "csv"


# -- exact rationals ---------------------------------------------------------

def decimal_str(value: Fraction, places: int = 4) -> str:
    """Render an exact rational with fixed decimals, round-half-even, no floats."""
    if places < 1:
        raise ValueError("places must be at least 1")
    sign = "-" if value < 0 else ""
    scaled = abs(value) * 10**places
    quotient, remainder = divmod(scaled.numerator, scaled.denominator)
    double = 2 * remainder
    if double > scaled.denominator or (double == scaled.denominator and quotient % 2 == 1):
        quotient += 1
    digits = f"{quotient:0{places + 1}d}"
    return f"{sign}{digits[:-places]}.{digits[-places:]}"


def rational_json(value: Fraction) -> dict[str, str]:
    """The dual rendering used across reports: exact string plus 4-place decimal."""
    return {"exact": str(value), "decimal": decimal_str(value)}


def rational_from_json(obj: dict[str, str]) -> Fraction:
    return Fraction(obj["exact"])
