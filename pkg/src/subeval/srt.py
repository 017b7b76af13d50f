"""SubRip (SRT) parsing and serialization.

Each cue becomes one timed SubtitleBlock.  By default every cue is its
own single-block utterance; a grouping map (utterance id -> cue index
list) reconstructs multi-block utterances.
"""

from __future__ import annotations

import re
from typing import Iterable, Mapping, Optional, Sequence, TextIO, Union

from .errors import FormatError
from .model import (
    DocumentFormat,
    SubtitleBlock,
    SubtitleDocument,
    SubtitleLine,
    Utterance,
)

_TIMING_RE = re.compile(
    r"^(\d{2}):(\d{2}):(\d{2}),(\d{3})\s*-->\s*(\d{2}):(\d{2}):(\d{2}),(\d{3})\s*$"
)


def _parse_timestamp(h: str, m: str, s: str, ms: str) -> int:
    return ((int(h) * 60 + int(m)) * 60 + int(s)) * 1000 + int(ms)


def format_timestamp(ms: int) -> str:
    h, rest = divmod(ms, 3_600_000)
    m, rest = divmod(rest, 60_000)
    s, milli = divmod(rest, 1000)
    return f"{h:02d}:{m:02d}:{s:02d},{milli:03d}"


def _cue_chunks(lines: list[str]) -> Iterable[list[str]]:
    chunk: list[str] = []
    for line in lines:
        if line.strip() == "":
            if chunk:
                yield chunk
                chunk = []
        else:
            chunk.append(line)
    if chunk:
        yield chunk


def parse_srt(
    source: Union[str, TextIO],
    grouping: Optional[Mapping[str, Sequence[int]]] = None,
) -> SubtitleDocument:
    """Parse SRT text into a document.

    `grouping` maps utterance ids to lists of cue index numbers (as
    written in the file).  Without it, each cue becomes one utterance
    whose id is the cue index as a string.
    """
    text = source if isinstance(source, str) else source.read()
    text = text.lstrip("﻿")
    cues: dict[int, SubtitleBlock] = {}
    order: list[int] = []
    for chunk in _cue_chunks(text.split("\n")):
        index_line = chunk[0].strip()
        try:
            cue_index = int(index_line)
        except ValueError:
            raise FormatError(f"expected cue index line, got {index_line!r}")
        if len(chunk) < 2:
            raise FormatError(f"cue {cue_index}: missing timing line")
        match = _TIMING_RE.match(chunk[1])
        if not match:
            raise FormatError(
                f"cue {cue_index}: malformed timing line {chunk[1].strip()!r}"
            )
        start_ms = _parse_timestamp(*match.groups()[:4])
        end_ms = _parse_timestamp(*match.groups()[4:])
        if end_ms <= start_ms:
            raise FormatError(f"cue {cue_index}: non-positive duration")
        text_lines = [line.rstrip("\r") for line in chunk[2:]]
        if not text_lines:
            raise FormatError(f"cue {cue_index}: no text lines")
        block = SubtitleBlock(
            tuple(SubtitleLine(line) for line in text_lines),
            start_ms=start_ms,
            end_ms=end_ms,
        )
        if cue_index in cues:
            raise FormatError(f"duplicate cue index {cue_index}")
        cues[cue_index] = block
        order.append(cue_index)

    utterances: list[Utterance] = []
    if grouping is None:
        for cue_index in order:
            block = cues[cue_index]
            utterances.append(
                Utterance(
                    id=str(cue_index),
                    blocks=(block,),
                    start_ms=block.start_ms,
                    end_ms=block.end_ms,
                )
            )
    else:
        for utt_id, cue_indices in grouping.items():
            blocks = []
            for cue_index in cue_indices:
                if cue_index not in cues:
                    raise FormatError(
                        f"grouping map references unknown cue index {cue_index}"
                    )
                blocks.append(cues[cue_index])
            if not blocks:
                raise FormatError(f"grouping map: utterance {utt_id!r} has no cues")
            utterances.append(
                Utterance(
                    id=utt_id,
                    blocks=tuple(blocks),
                    start_ms=min(b.start_ms for b in blocks),
                    end_ms=max(b.end_ms for b in blocks),
                )
            )
    return SubtitleDocument(tuple(utterances), format=DocumentFormat.SRT)


def serialize_srt(doc: SubtitleDocument) -> str:
    """Emit standard SRT, cue indices renumbered from 1."""
    out: list[str] = []
    cue_index = 1
    for utt in doc.utterances:
        for block in utt.blocks:
            if not block.timed:
                raise FormatError(
                    f"utterance {utt.id!r}: block without timing cannot be written as SRT"
                )
            header = (
                f"{cue_index}\n"
                f"{format_timestamp(block.start_ms)} --> {format_timestamp(block.end_ms)}"
            )
            body = "\n".join(line.text for line in block.lines)
            out.append(f"{header}\n{body}")
            cue_index += 1
    return "\n\n".join(out) + ("\n" if out else "")


def load_grouping_map(path: str) -> dict[str, list[int]]:
    """TSV grouping map: utterance_id <TAB> comma-separated cue indices."""
    grouping: dict[str, list[int]] = {}
    with open(path, encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.rstrip("\n")
            if not line.strip():
                continue
            parts = line.split("\t")
            if len(parts) != 2:
                raise FormatError(f"grouping map line {lineno}: expected 2 columns")
            utt_id, cue_field = parts
            try:
                cue_indices = [int(piece) for piece in cue_field.split(",")]
            except ValueError:
                raise FormatError(
                    f"grouping map line {lineno}: bad cue index list {cue_field!r}"
                )
            if utt_id in grouping:
                raise FormatError(
                    f"grouping map line {lineno}: duplicate utterance id {utt_id!r}"
                )
            grouping[utt_id] = cue_indices
    return grouping


def load_srt(path: str, grouping: Optional[Mapping[str, Sequence[int]]] = None) -> SubtitleDocument:
    with open(path, encoding="utf-8") as fh:
        return parse_srt(fh, grouping=grouping)
