"""Text preprocessing: HTML stripping, tokenization, stopwords, stemming.

The pipeline order is fixed: markup removal, tokenization, stopword
filtering on the *unstemmed* tokens, then Porter2 stemming.
"""

import re
from dataclasses import dataclass, field
from functools import lru_cache
from html.parser import HTMLParser
from importlib import resources
from pathlib import Path
from typing import FrozenSet, Iterable, List, Optional, Union

import snowballstemmer

__all__ = [
    "RawDocument",
    "TokenizedDocument",
    "load_stopwords",
    "default_stopwords",
    "strip_html",
    "tokenize",
    "remove_stopwords",
    "stem",
    "preprocess_document",
    "MIN_TOKEN_LENGTH",
]

HTML = "html"
PLAIN = "plain"

# Stems shorter than this are dropped as tokenization noise.
MIN_TOKEN_LENGTH = 2

_SPLIT_RE = re.compile(r"[\W_]+")
_WS_RE = re.compile(r"\s+")

_BLOCK_TAGS = frozenset(
    """
    address article aside blockquote body br dd details dialog div dl dt
    fieldset figcaption figure footer form h1 h2 h3 h4 h5 h6 head header hr
    html li main nav ol option p pre section summary table tbody td tfoot th
    thead title tr ul
    """.split()
)
_DROP_TAGS = frozenset({"script", "style"})


@dataclass(frozen=True)
class RawDocument:
    id: int
    source: str
    content: str
    kind: str = PLAIN

    def __post_init__(self):
        if self.kind not in (HTML, PLAIN):
            raise ValueError(f"kind must be 'html' or 'plain', got {self.kind!r}")


@dataclass(frozen=True)
class TokenizedDocument:
    id: int
    tokens: List[str] = field(default_factory=list)


class _TextExtractor(HTMLParser):
    def __init__(self):
        super().__init__(convert_charrefs=True)
        self.parts = []
        self._skip_depth = 0

    def handle_starttag(self, tag, attrs):
        if tag in _DROP_TAGS:
            self._skip_depth += 1
            self.parts.append(" ")
        elif tag in _BLOCK_TAGS:
            self.parts.append(" ")

    def handle_startendtag(self, tag, attrs):
        if tag in _BLOCK_TAGS or tag in _DROP_TAGS:
            self.parts.append(" ")

    def handle_endtag(self, tag):
        if tag in _DROP_TAGS:
            self._skip_depth = max(0, self._skip_depth - 1)
            self.parts.append(" ")
        elif tag in _BLOCK_TAGS:
            self.parts.append(" ")

    def handle_data(self, data):
        if not self._skip_depth:
            self.parts.append(data)


def strip_html(content: str) -> str:
    """Remove markup from ``content`` and return the visible text.

    Script and style bodies are dropped, character references are decoded
    and block-level boundaries become a single space. Runs of whitespace
    are collapsed and the result is stripped.

    >>> strip_html("<div>a<script>x=1;</script>b</div>")
    'a b'
    """
    parser = _TextExtractor()
    parser.feed(content)
    parser.close()
    return _WS_RE.sub(" ", "".join(parser.parts)).strip()


def tokenize(text: str) -> List[str]:
    """Lowercase and split on runs of non-alphanumerics; drop numeric tokens."""
    return [
        tok for tok in _SPLIT_RE.split(text.lower()) if tok and not tok.isdigit()
    ]


def remove_stopwords(tokens: Iterable[str], stoplist: FrozenSet[str]) -> List[str]:
    return [tok for tok in tokens if tok not in stoplist]


@lru_cache(maxsize=1)
def _english_stemmer():
    return snowballstemmer.stemmer("english")


@lru_cache(maxsize=65536)
def stem(token: str) -> str:
    """Porter2 (English Snowball) stem of a lowercase token."""
    return _english_stemmer().stemWord(token)


def load_stopwords(path: Optional[Union[str, Path]] = None) -> FrozenSet[str]:
    """Read a stopword file (UTF-8, one word per line, ``#`` comments).

    With no path the bundled English list is returned.
    """
    if path is None:
        text = resources.files("mficlust").joinpath("data/stopwords.txt").read_text("utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    words = set()
    for line in text.splitlines():
        line = line.strip()
        if line and not line.startswith("#"):
            words.add(line.lower())
    return frozenset(words)


@lru_cache(maxsize=1)
def default_stopwords() -> FrozenSet[str]:
    return load_stopwords()


def preprocess_document(raw: RawDocument, stoplist: Optional[FrozenSet[str]] = None) -> TokenizedDocument:
    """Run the full pipeline on one document."""
    if stoplist is None:
        stoplist = default_stopwords()
    text = strip_html(raw.content) if raw.kind == HTML else raw.content
    tokens = remove_stopwords(tokenize(text), stoplist)
    stems = [stem(tok) for tok in tokens]
    return TokenizedDocument(raw.id, [s for s in stems if len(s) >= MIN_TOKEN_LENGTH])
