"""Tokenization, WER normalization and part-of-speech plumbing.

Break tokens (``<eob>``/``<eol>``) are always isolated as single tokens
regardless of scheme, so downstream metrics can count and strip them
reliably.
"""

from __future__ import annotations

import functools
import re
import sys
import unicodedata
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Optional, Sequence, TextIO, Union

from .errors import DataError, FormatError
from .model import EOB, EOL, BreakKind

UPOS_TAGS = frozenset(
    {
        "ADJ", "ADP", "ADV", "AUX", "CCONJ", "DET", "INTJ", "NOUN", "NUM",
        "PART", "PRON", "PROPN", "PUNCT", "SCONJ", "SYM", "VERB", "X",
    }
)


class Scheme(Enum):
    WHITESPACE = "whitespace"
    INTL13A = "13a"
    MT_DETACHED = "mt"


class WordClass(Enum):
    CONTENT = "content"
    FUNCTION = "function"
    PUNCT = "punct"


# Function words (chinks) are the closed classes; everything else that
# is not punctuation counts as content (chunk).
DEFAULT_CHUNK_CHINK: dict[str, WordClass] = {
    "PUNCT": WordClass.PUNCT,
    "ADP": WordClass.FUNCTION,
    "AUX": WordClass.FUNCTION,
    "CCONJ": WordClass.FUNCTION,
    "SCONJ": WordClass.FUNCTION,
    "DET": WordClass.FUNCTION,
    "PART": WordClass.FUNCTION,
    "PRON": WordClass.FUNCTION,
    "ADJ": WordClass.CONTENT,
    "ADV": WordClass.CONTENT,
    "INTJ": WordClass.CONTENT,
    "NOUN": WordClass.CONTENT,
    "NUM": WordClass.CONTENT,
    "PROPN": WordClass.CONTENT,
    "SYM": WordClass.CONTENT,
    "VERB": WordClass.CONTENT,
    "X": WordClass.CONTENT,
}


@dataclass(frozen=True)
class Token:
    surface: str
    is_break: bool = False
    break_kind: Optional[BreakKind] = None

    def __post_init__(self):
        if self.is_break != (self.surface in (EOB, EOL)):
            raise DataError(f"inconsistent break flag for token {self.surface!r}")


@dataclass(frozen=True)
class TokenizedUtterance:
    tokens: tuple[Token, ...]
    scheme: Scheme

    def words(self) -> list[str]:
        return [t.surface for t in self.tokens if not t.is_break]

    def surfaces(self) -> list[str]:
        return [t.surface for t in self.tokens]


@dataclass(frozen=True)
class TaggedUtterance:
    items: tuple[tuple[Token, Optional[str]], ...]

    def __post_init__(self):
        for token, tag in self.items:
            if token.is_break and tag is not None:
                raise DataError("break token must not carry a POS tag")
            if not token.is_break and tag is None:
                raise DataError(f"word token {token.surface!r} is missing a POS tag")


_BREAK_SPLIT_RE = re.compile(r"(<eob>|<eol>)")

_13A_PUNCT_RE = re.compile(r"([\{-\~\[-\` -\&\(-\+\:-\@\/])")
_13A_DOT_COMMA_LEFT_RE = re.compile(r"([^0-9])([\.,])")
_13A_DOT_COMMA_RIGHT_RE = re.compile(r"([\.,])([^0-9])")
_13A_DIGIT_DASH_RE = re.compile(r"([0-9])(-)")


def _tokenize_13a_span(span: str) -> list[str]:
    norm = span
    norm = norm.replace("<skipped>", "")
    norm = norm.replace("&quot;", '"')
    norm = norm.replace("&amp;", "&")
    norm = norm.replace("&lt;", "<")
    norm = norm.replace("&gt;", ">")
    norm = f" {norm} "
    norm = _13A_PUNCT_RE.sub(r" \1 ", norm)
    norm = _13A_DOT_COMMA_LEFT_RE.sub(r"\1 \2 ", norm)
    norm = _13A_DOT_COMMA_RIGHT_RE.sub(r" \1 \2", norm)
    norm = _13A_DIGIT_DASH_RE.sub(r"\1 \2 ", norm)
    return norm.split()


@functools.lru_cache(maxsize=1)
def _detachable_punct_re() -> re.Pattern:
    chars = []
    for code in range(sys.maxunicode + 1):
        ch = chr(code)
        if ch in ".,'’":
            continue
        if unicodedata.category(ch).startswith(("P", "S")):
            chars.append(ch)
    return re.compile("([" + re.escape("".join(chars)) + "])")


_MT_DOT_COMMA_LEFT_RE = re.compile(r"([^0-9])([\.,])")
_MT_DOT_COMMA_RIGHT_RE = re.compile(r"([\.,])([^0-9])")
_MT_APOS_EN_RE = re.compile(r"(\w)(['’])(\w)", re.UNICODE)


def _tokenize_mt_span(span: str, lang: str) -> list[str]:
    norm = f" {span} "
    norm = _detachable_punct_re().sub(r" \1 ", norm)
    norm = _MT_DOT_COMMA_LEFT_RE.sub(r"\1 \2 ", norm)
    norm = _MT_DOT_COMMA_RIGHT_RE.sub(r" \1 \2", norm)
    if lang.startswith("fr") or lang.startswith("it"):
        # Elision attaches left: l'homme -> l' homme
        norm = _MT_APOS_EN_RE.sub(r"\1\2 \3", norm)
    else:
        # English-style: don't -> don 't
        norm = _MT_APOS_EN_RE.sub(r"\1 \2\3", norm)
    return norm.split()


def _make_token(surface: str) -> Token:
    if surface == EOB:
        return Token(surface, is_break=True, break_kind=BreakKind.BLOCK)
    if surface == EOL:
        return Token(surface, is_break=True, break_kind=BreakKind.LINE)
    return Token(surface)


def tokenize(text: str, scheme: Scheme, lang: str = "en") -> TokenizedUtterance:
    """Tokenize one utterance.  Break tokens are isolated in every scheme."""
    tokens: list[Token] = []
    for part in _BREAK_SPLIT_RE.split(text):
        if part in (EOB, EOL):
            tokens.append(_make_token(part))
            continue
        if not part.strip():
            continue
        if scheme is Scheme.WHITESPACE:
            surfaces = part.split()
        elif scheme is Scheme.INTL13A:
            surfaces = _tokenize_13a_span(part)
        else:
            surfaces = _tokenize_mt_span(part, lang)
        tokens.extend(Token(s) for s in surfaces)
    return TokenizedUtterance(tuple(tokens), scheme)


def _strip_edge_punct(word: str) -> str:
    start, end = 0, len(word)
    while start < end and unicodedata.category(word[start]).startswith("P"):
        start += 1
    while end > start and unicodedata.category(word[end - 1]).startswith("P"):
        end -= 1
    return word[start:end]


def normalize_for_wer(tokens: TokenizedUtterance) -> list[str]:
    """Lowercased, unpunctuated word sequence for WER scoring."""
    out = []
    for token in tokens.tokens:
        if token.is_break:
            continue
        word = _strip_edge_punct(token.surface)
        if not word:
            continue
        out.append(word.lower())
    return out


def parse_conllu(source: Union[str, TextIO, Iterable[str]]) -> list[list[tuple[str, str]]]:
    """Read (FORM, UPOS) sequences from CoNLL-U text.

    Multiword-token ranges ("n-m") and empty nodes ("n.m") are skipped;
    their parts carry the tags.
    """
    if isinstance(source, str):
        lines = source.split("\n")
    else:
        lines = [line.rstrip("\n") for line in source]
    sentences: list[list[tuple[str, str]]] = []
    current: list[tuple[str, str]] = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            if current:
                sentences.append(current)
                current = []
            continue
        if line.startswith("#"):
            continue
        cols = line.split("\t")
        if len(cols) != 10:
            raise FormatError(f"expected 10 columns at line {lineno}, got {len(cols)}")
        token_id, form, upos = cols[0], cols[1], cols[3]
        if "-" in token_id or "." in token_id:
            continue
        if upos not in UPOS_TAGS:
            raise FormatError(f"unknown UPOS {upos!r} at line {lineno}")
        current.append((form, upos))
    if current:
        sentences.append(current)
    return sentences


def load_conllu(path: str) -> list[list[tuple[str, str]]]:
    with open(path, encoding="utf-8") as fh:
        return parse_conllu(fh)


def attach_tags(
    tokens: TokenizedUtterance,
    tags: Sequence[str],
    utt_id: str = "?",
) -> TaggedUtterance:
    """Attach a tag sequence positionally to the non-break tokens."""
    n_words = sum(1 for t in tokens.tokens if not t.is_break)
    if n_words != len(tags):
        raise DataError(
            f"utterance {utt_id!r}: {n_words} word tokens but {len(tags)} tags"
        )
    items = []
    it = iter(tags)
    for token in tokens.tokens:
        if token.is_break:
            items.append((token, None))
        else:
            tag = next(it)
            if tag not in UPOS_TAGS:
                raise DataError(f"utterance {utt_id!r}: unknown UPOS {tag!r}")
            items.append((token, tag))
    return TaggedUtterance(tuple(items))


def classify_chunk_chink(
    tag: str, table: Optional[dict[str, WordClass]] = None
) -> WordClass:
    table = table if table is not None else DEFAULT_CHUNK_CHINK
    if tag not in table:
        raise DataError(f"unknown UPOS {tag!r}")
    return table[tag]


def load_chunk_chink_table(path: str) -> dict[str, WordClass]:
    """Override table: one "TAG class" pair per line, class in
    {content, function, punct}."""
    table = dict(DEFAULT_CHUNK_CHINK)
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) != 2:
                raise FormatError(f"chunk-chink table line {lineno}: expected 2 fields")
            tag, cls = parts
            if tag not in UPOS_TAGS:
                raise FormatError(f"chunk-chink table line {lineno}: unknown UPOS {tag!r}")
            try:
                table[tag] = WordClass(cls.lower())
            except ValueError:
                raise FormatError(f"chunk-chink table line {lineno}: unknown class {cls!r}")
    return table


def load_lexicon(path: str) -> dict[str, str]:
    """Fallback word -> UPOS lookup, TSV."""
    lexicon: dict[str, str] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise FormatError(f"lexicon line {lineno}: expected 2 columns")
            word, upos = parts
            if upos not in UPOS_TAGS:
                raise FormatError(f"lexicon line {lineno}: unknown UPOS {upos!r}")
            lexicon[word] = upos
    return lexicon


def tag_with_lexicon(tokens: TokenizedUtterance, lexicon: dict[str, str]) -> list[str]:
    """Tag the non-break tokens by lookup; OOV words get X, punctuation
    tokens PUNCT."""
    tags = []
    for token in tokens.tokens:
        if token.is_break:
            continue
        if token.surface in lexicon:
            tags.append(lexicon[token.surface])
        elif all(unicodedata.category(c).startswith("P") for c in token.surface):
            tags.append("PUNCT")
        else:
            tags.append("X")
    return tags
