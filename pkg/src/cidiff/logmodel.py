"""Line-indexed log representation: loading, timestamp stripping, tokenization."""

from __future__ import annotations

import re
from dataclasses import dataclass
from pathlib import Path

# Leading ISO-8601 timestamp followed by exactly one space, as emitted by
# GitHub Actions raw job logs (fractional seconds and zone designator optional).
TIMESTAMP_RE = re.compile(
    r"^\d{4}-\d{2}-\d{2}T\d{2}:\d{2}:\d{2}(?:\.\d+)?(?:Z|[+-]\d{2}:?\d{2})? "
)


def strip_timestamp(raw_line: str) -> str:
    """Remove a leading timestamp token from a line, if present.

    Returns the input unchanged when no timestamp prefix matches.
    """
    match = TIMESTAMP_RE.match(raw_line)
    if match is None:
        return raw_line
    return raw_line[match.end():]


def tokenize(stripped_line: str) -> list[str]:
    """Split a line into maximal non-whitespace runs, in order."""
    return stripped_line.split()


@dataclass(frozen=True)
class LogLine:
    """One physical log line.

    ``raw`` is the original text without its terminator, ``stripped`` the text
    after timestamp removal, ``tokens`` the whitespace-split token list of
    ``stripped``.
    """

    index: int
    raw: str
    stripped: str
    tokens: tuple[str, ...]


@dataclass(frozen=True)
class Log:
    """An ordered sequence of LogLines plus an origin label."""

    lines: tuple[LogLine, ...]
    source: str = "<unknown>"

    def __len__(self) -> int:
        return len(self.lines)

    def __iter__(self):
        return iter(self.lines)

    def __getitem__(self, i: int) -> LogLine:
        return self.lines[i]

    def stripped_lines(self) -> list[str]:
        return [line.stripped for line in self.lines]


def _make_line(index: int, raw: str, strip: bool) -> LogLine:
    stripped = strip_timestamp(raw) if strip else raw
    return LogLine(index=index, raw=raw, stripped=stripped, tokens=tuple(tokenize(stripped)))


def log_from_text(text: str, source: str = "<text>", strip_timestamps: bool = True) -> Log:
    """Build a Log from decoded text. Accepts LF and CRLF terminators."""
    if text == "":
        return Log(lines=(), source=source)
    parts = text.split("\n")
    if parts and parts[-1] == "":
        parts.pop()  # single trailing newline does not create a line
    lines = []
    for i, part in enumerate(parts):
        if part.endswith("\r"):
            part = part[:-1]
        lines.append(_make_line(i, part, strip_timestamps))
    return Log(lines=tuple(lines), source=source)


def log_from_lines(raw_lines, source: str = "<lines>", strip_timestamps: bool = True) -> Log:
    """Build a Log from an iterable of already-split raw lines."""
    lines = tuple(_make_line(i, raw, strip_timestamps) for i, raw in enumerate(raw_lines))
    return Log(lines=lines, source=source)


def load_log(path_or_bytes, source: str | None = None, strip_timestamps: bool = True) -> Log:
    """Load a Log from a file path or a bytes object.

    Undecodable byte sequences are replaced, never fatal. I/O failures are
    re-raised with the source label attached.
    """
    if isinstance(path_or_bytes, bytes):
        text = path_or_bytes.decode("utf-8", errors="replace")
        return log_from_text(text, source=source or "<bytes>", strip_timestamps=strip_timestamps)
    path = Path(path_or_bytes)
    label = source or str(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise OSError(f"cannot read log {label!r}: {exc}") from exc
    return log_from_text(
        data.decode("utf-8", errors="replace"), source=label, strip_timestamps=strip_timestamps
    )
