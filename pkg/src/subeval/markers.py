"""Parser and serializer for the inline-marker subtitle format.

One utterance per physical line; ``<eob>`` separates blocks, ``<eol>``
separates lines inside a block.  A trailing ``<eob>`` is accepted on
input and always produced on output.
"""

from __future__ import annotations

import logging
from typing import Iterable, Optional, Sequence, TextIO, Union

from .errors import FormatError
from .model import (
    EOB,
    EOL,
    DocumentFormat,
    SubtitleBlock,
    SubtitleDocument,
    SubtitleLine,
    Utterance,
)

log = logging.getLogger(__name__)


def _isolate_markers(text: str) -> str:
    return text.replace(EOB, f" {EOB} ").replace(EOL, f" {EOL} ")


def parse_utterance_text(
    text: str, utt_id: str, index: int, lenient: bool = False
) -> Utterance:
    """Parse one marker-format line into an Utterance."""
    if not text.strip():
        raise FormatError(f"empty utterance (utterance {index})")
    body = _isolate_markers(text)
    block_texts = body.split(EOB)
    # A trailing <eob> leaves one empty final segment; that is canonical.
    if block_texts and not block_texts[-1].strip():
        block_texts.pop()
    blocks: list[SubtitleBlock] = []
    for block_text in block_texts:
        line_texts = [piece.strip() for piece in block_text.split(EOL)]
        lines = []
        for piece in line_texts:
            # Collapse runs of internal whitespace left by marker isolation.
            piece = " ".join(piece.split())
            if not piece:
                if lenient:
                    log.warning("dropping empty segment in utterance %d", index)
                    continue
                raise FormatError(f"empty segment (utterance {index})")
            lines.append(SubtitleLine(piece))
        if not lines:
            if lenient:
                log.warning("dropping empty block in utterance %d", index)
                continue
            raise FormatError(f"empty segment (utterance {index})")
        blocks.append(SubtitleBlock(tuple(lines)))
    if not blocks:
        raise FormatError(f"empty utterance (utterance {index})")
    return Utterance(id=utt_id, blocks=tuple(blocks))


def parse_marked_text(
    source: Union[str, TextIO, Iterable[str]],
    ids: Optional[Sequence[str]] = None,
    lenient: bool = False,
) -> SubtitleDocument:
    """Parse marker-format text, one utterance per line.

    `ids` optionally supplies utterance ids; by default they are the
    0-based line numbers.
    """
    if isinstance(source, str):
        raw_lines = source.split("\n")
        if raw_lines and raw_lines[-1] == "":
            raw_lines.pop()
    else:
        raw_lines = [line.rstrip("\n") for line in source]
    if ids is not None and len(ids) != len(raw_lines):
        raise FormatError(
            f"id sidecar length {len(ids)} does not match utterance count {len(raw_lines)}"
        )
    utterances = []
    for i, raw in enumerate(raw_lines):
        utt_id = ids[i] if ids is not None else str(i)
        utterances.append(parse_utterance_text(raw, utt_id, i, lenient=lenient))
    return SubtitleDocument(tuple(utterances), format=DocumentFormat.MARKED_TEXT)


def serialize_marked_text(doc: SubtitleDocument) -> str:
    """Canonical marker form: single-spaced tokens, trailing <eob>,
    LF line endings."""
    return "".join(utt.text() + "\n" for utt in doc.utterances)


def load_marked_text(path: str, ids=None, lenient: bool = False) -> SubtitleDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_marked_text(fh, ids=ids, lenient=lenient)
