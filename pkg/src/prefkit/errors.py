"""Exception hierarchy shared across the toolkit.

Every error that callers are expected to handle derives from
:class:`PrefkitError`, so the CLI and the HTTP service can map the whole
family to exit codes / status codes in one place.
"""

from __future__ import annotations


class PrefkitError(Exception):
    """Base class for all domain errors raised by prefkit."""


class ConflictingJudgment(PrefkitError):
    """The same unordered pair was judged with two different relations."""

    def __init__(self, pair: tuple[str, str]):
        self.pair = pair
        super().__init__(f"conflicting judgments for pair {pair!r}")


class MissingTimestamp(PrefkitError):
    """keep-latest conflict resolution needs timestamps on every judgment."""

    def __init__(self, pair: tuple[str, str]):
        self.pair = pair
        super().__init__(
            f"keep-latest conflict policy requires timestamps; pair {pair!r} has none"
        )


class TieInStrictMode(PrefkitError):
    """A tie appeared where strict mode forbids one."""

    def __init__(self, pair: tuple[str, str] | None = None):
        self.pair = pair
        detail = f" on pair {pair!r}" if pair else ""
        super().__init__(f"tie not allowed in strict mode{detail}")


class NoCompleteTriples(PrefkitError):
    """Agreement is undefined: the relation contains no fully judged triple."""

    def __init__(self) -> None:
        super().__init__("no item triple has all three pairs judged")


class NotComplete(PrefkitError):
    """The relation misses pairs required for score derivation."""

    def __init__(self, missing_pairs: list[tuple[str, str]]):
        self.missing_pairs = missing_pairs
        super().__init__(f"relation is not strongly complete; missing {missing_pairs!r}")


class NotTransitive(PrefkitError):
    """The relation has transitivity violations, so no score function exists."""

    def __init__(self, violations: list[tuple[str, str, str]]):
        self.violations = violations
        super().__init__(f"relation is not transitive; violating triples {violations!r}")


class DuplicateItems(PrefkitError):
    def __init__(self, duplicates: list[str]):
        self.duplicates = duplicates
        super().__init__(f"duplicate items in session roster: {duplicates!r}")


class TooFewItems(PrefkitError):
    def __init__(self, count: int):
        self.count = count
        super().__init__(f"a session needs at least 2 items, got {count}")


class UnknownPair(PrefkitError):
    def __init__(self, pair: tuple[str, str]):
        self.pair = pair
        super().__init__(f"pair {pair!r} does not belong to this session")


class PairAlreadyDetermined(PrefkitError):
    def __init__(self, pair: tuple[str, str]):
        self.pair = pair
        super().__init__(f"pair {pair!r} is already answered or inferred")


class SessionNotDone(PrefkitError):
    def __init__(self) -> None:
        super().__init__("session still has undetermined pairs")


class ParseError(PrefkitError):
    """Malformed judgment input; `line` is 1-based (header included for CSV)."""

    def __init__(self, line: int, reason: str):
        self.line = line
        self.reason = reason
        super().__init__(f"line {line}: {reason}")


class UnknownRelationSymbol(ParseError):
    def __init__(self, line: int, symbol: str):
        self.symbol = symbol
        super().__init__(line, f"unknown relation symbol {symbol!r} (use >, <, ~ or left, right, tie)")


class SelfPair(ParseError):
    def __init__(self, line: int, item: str):
        self.item = item
        super().__init__(line, f"left and right are the same item {item!r}")
