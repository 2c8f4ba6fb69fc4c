"""Instance files: DIMACS-style parsing, printing, and cached loading."""

from __future__ import annotations

import logging
import re
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Dict, Iterable
from urllib.parse import ParseResult, urlparse
from urllib.request import url2pathname

import httpx

from .graph import Edge, Graph, edge
from .reduction import LabeledInstance

logger = logging.getLogger(__name__)

HEADER_KIND = "sqroot"
STDIN_SOURCE = "-"

_TOKEN = re.compile(r"\S+")


class InstanceSourceError(RuntimeError):
    """Raised when an instance file cannot be retrieved."""


class InstanceFormatError(ValueError):
    """Raised when an instance file is malformed; carries a 1-based position."""

    def __init__(self, message: str, *, source: str = "<string>", line: int = 0, column: int = 0) -> None:
        super().__init__(f"{source}:{line}:{column}: {message}")
        self.message = message
        self.source = source
        self.line = line
        self.column = column


@dataclass(slots=True)
class _Token:
    text: str
    column: int


def _tokens(line: str) -> list[_Token]:
    return [_Token(match.group(), match.start() + 1) for match in _TOKEN.finditer(line)]


def parse_instance(text: str, source: str = "<string>") -> LabeledInstance:
    """Parse ``p sqroot n m`` / ``e`` / ``r`` / ``b`` lines into a labeled instance.

    ``c`` comments and ``s`` status lines are skipped. Vertices are 1-based in
    the file and 0-based in the result.
    """

    def fail(message: str, line: int, column: int = 1) -> InstanceFormatError:
        return InstanceFormatError(message, source=source, line=line, column=column)

    n: int | None = None
    declared_m = 0
    header_line = 0
    edges: dict[Edge, int] = {}
    labels: dict[str, dict[Edge, tuple[int, int]]] = {"r": {}, "b": {}}

    for number, line in enumerate(text.splitlines(), start=1):
        tokens = _tokens(line)
        if not tokens or tokens[0].text in {"c", "s"}:
            continue
        kind = tokens[0].text
        if kind == "p":
            if n is not None:
                raise fail("duplicate problem line", number)
            if len(tokens) != 4 or tokens[1].text != HEADER_KIND:
                raise fail(f"expected 'p {HEADER_KIND} <n> <m>'", number)
            n, declared_m = (_count(t, source, number) for t in tokens[2:])
            header_line = number
            continue
        if kind not in {"e", "r", "b"}:
            raise fail(f"unknown line type {kind!r}", number)
        if n is None:
            raise fail("edge line before the problem line", number)
        if len(tokens) != 3:
            raise fail(f"expected '{kind} <u> <v>'", number, tokens[0].column)
        u, v = (_vertex(t, n, source, number) for t in tokens[1:])
        if u == v:
            raise fail(f"self-loop on vertex {u + 1}", number, tokens[2].column)
        uv = edge(u, v)
        if kind == "e":
            if uv in edges:
                raise fail(f"duplicate edge {u + 1} {v + 1} (first on line {edges[uv]})", number)
            edges[uv] = number
        else:
            if uv in labels[kind]:
                raise fail(f"duplicate label {kind} {u + 1} {v + 1}", number)
            labels[kind][uv] = (number, tokens[1].column)

    if n is None:
        raise fail("missing problem line 'p sqroot <n> <m>'", 1)
    if len(edges) != declared_m:
        raise fail(f"problem line declares {declared_m} edges, found {len(edges)}", header_line)
    for kind, entries in labels.items():
        for uv, (number, column) in sorted(entries.items(), key=lambda item: item[1]):
            if uv not in edges:
                raise fail(f"labeled pair {uv[0] + 1} {uv[1] + 1} is not an 'e' edge", number, column)

    graph = Graph.from_edges(n, edges)
    return LabeledInstance(graph, frozenset(labels["r"]), frozenset(labels["b"]))


def _count(token: _Token, source: str, line: int) -> int:
    try:
        value = int(token.text)
    except ValueError:
        value = -1
    if value < 0:
        raise InstanceFormatError(
            f"expected a non-negative integer, got {token.text!r}",
            source=source,
            line=line,
            column=token.column,
        )
    return value


def _vertex(token: _Token, n: int, source: str, line: int) -> int:
    value = _count(token, source, line)
    if not 1 <= value <= n:
        raise InstanceFormatError(
            f"vertex {value} is outside 1..{n}", source=source, line=line, column=token.column
        )
    return value - 1


def format_graph(graph: Graph, comments: Iterable[str] = ()) -> str:
    return format_instance(LabeledInstance(graph), comments)


def format_instance(instance: LabeledInstance, comments: Iterable[str] = ()) -> str:
    graph = instance.graph
    lines = [f"c {comment}" for comment in comments]
    lines.append(f"p {HEADER_KIND} {graph.n} {graph.m}")
    lines.extend(f"e {u + 1} {v + 1}" for u, v in graph.edges())
    lines.extend(f"r {u + 1} {v + 1}" for u, v in sorted(instance.required))
    lines.extend(f"b {u + 1} {v + 1}" for u, v in sorted(instance.forbidden))
    return "\n".join(lines) + "\n"


def format_dot(graph: Graph, *, highlight: Iterable[Edge] = (), name: str = "G") -> str:
    """Graphviz text; ``highlight`` edges (e.g. root edges) are drawn bold."""

    bold = {edge(*e) for e in highlight}
    lines = [f"graph {name} {{"]
    lines.extend(f"  {v + 1};" for v in graph if graph.degree(v) == 0)
    for u, v in graph.edges():
        style = " [penwidth=3]" if (u, v) in bold else ""
        lines.append(f"  {u + 1} -- {v + 1}{style};")
    lines.append("}")
    return "\n".join(lines) + "\n"


@dataclass(slots=True)
class _CacheEntry:
    text: str
    mtime: float | None = None


class InstanceLoader:
    """Read instance and trace files from paths, ``file://`` or ``http(s)://`` URLs, or stdin."""

    def __init__(self, timeout: float = 10.0) -> None:
        self.timeout = timeout
        self._cache: Dict[str, _CacheEntry] = {}

    def load(self, source: str) -> LabeledInstance:
        return parse_instance(self.read_text(source), source)

    def read_text(self, source: str) -> str:
        if source == STDIN_SOURCE:
            try:
                return sys.stdin.read()
            except UnicodeDecodeError as exc:
                raise InstanceSourceError(f"Standard input is not valid UTF-8: {exc}") from exc

        parsed = urlparse(source)
        scheme = parsed.scheme.lower()
        if scheme in {"http", "https"}:
            return self._load_http(source)
        if scheme == "file":
            return self._load_path(self._path_from_file_url(parsed))
        # single letters are Windows drive letters, not schemes
        if not scheme or len(scheme) == 1:
            return self._load_path(Path(source))
        raise InstanceSourceError(f"Unsupported instance source: {source}")

    def _load_http(self, source: str) -> str:
        if source in self._cache:
            return self._cache[source].text
        try:
            with httpx.Client(timeout=self.timeout) as client:
                response = client.get(source)
                response.raise_for_status()
        except httpx.TimeoutException as exc:
            raise InstanceSourceError(f"Instance download timed out ({self.timeout}s): {source}") from exc
        except httpx.HTTPError as exc:
            raise InstanceSourceError(f"Failed to download instance: {source}: {exc}") from exc
        logger.debug("Fetched %d bytes from %s", len(response.text), source)
        self._cache[source] = _CacheEntry(response.text)
        return response.text

    def _load_path(self, path: Path) -> str:
        key = path.resolve().as_uri()
        try:
            mtime = path.stat().st_mtime
        except FileNotFoundError as exc:
            raise InstanceSourceError(f"Instance file does not exist: {path}") from exc
        except OSError as exc:
            raise InstanceSourceError(f"Cannot access instance file: {path}: {exc}") from exc

        cached = self._cache.get(key)
        if cached and cached.mtime == mtime:
            return cached.text
        try:
            text = path.read_text(encoding="utf-8")
        except UnicodeDecodeError as exc:
            raise InstanceSourceError(f"Instance file is not valid UTF-8: {path}: {exc}") from exc
        except OSError as exc:
            raise InstanceSourceError(f"Failed to read instance file: {path}: {exc}") from exc
        self._cache[key] = _CacheEntry(text, mtime)
        return text

    @staticmethod
    def _path_from_file_url(parsed: ParseResult) -> Path:
        if parsed.netloc not in {"", "localhost"}:
            raise InstanceSourceError(f"File URLs with hostnames are not supported: {parsed.geturl()}")
        path = url2pathname(parsed.path)
        if not path:
            raise InstanceSourceError("file:// URL does not provide a path")
        return Path(path)


__all__ = [
    "HEADER_KIND",
    "InstanceFormatError",
    "InstanceLoader",
    "InstanceSourceError",
    "STDIN_SOURCE",
    "format_dot",
    "format_graph",
    "format_instance",
    "parse_instance",
]
