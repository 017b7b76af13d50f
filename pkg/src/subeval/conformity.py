"""Conformity to subtitling constraints: characters per line, reading
speed, and segmentation plausibility."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Optional, Sequence

from .errors import DataError
from .model import BreakKind, SubtitleDocument
from .textproc import TaggedUtterance, WordClass, classify_chunk_chink

DEFAULT_MAX_CPL = 42
DEFAULT_MAX_CPS = 21.0


@dataclass(frozen=True)
class ConformityThresholds:
    max_cpl: int = DEFAULT_MAX_CPL
    max_cps: float = DEFAULT_MAX_CPS

    def __post_init__(self):
        if self.max_cpl <= 0 or self.max_cps <= 0:
            raise DataError("conformity thresholds must be positive")


class LengthAggregation(Enum):
    PER_LINE = "line"
    PER_BLOCK = "block"


class TimingMode(Enum):
    PER_BLOCK = "block"
    PER_UTTERANCE = "utterance"


class BreakDirection(Enum):
    CONTENT_THEN_FUNCTION = "content-then-function"
    EITHER_ORDER = "either-order"


class BreakSelection(Enum):
    EOL = "eol"
    EOB = "eob"
    BOTH = "both"


@dataclass(frozen=True)
class ConformityReport:
    length_rate: Optional[float]
    reading_speed_rate: Optional[float]
    segmentation_rate: Optional[float]
    lines: int
    timed_units: int
    breaks: int


def length_conformity(
    doc: SubtitleDocument,
    thresholds: ConformityThresholds = ConformityThresholds(),
    aggregation: LengthAggregation = LengthAggregation.PER_LINE,
) -> Optional[float]:
    """Fraction of lines (or blocks) within the CPL bound, inclusive."""
    conforming = 0
    units = 0
    for utt in doc.utterances:
        for block in utt.blocks:
            if aggregation is LengthAggregation.PER_LINE:
                for line in block.lines:
                    units += 1
                    if line.char_count() <= thresholds.max_cpl:
                        conforming += 1
            else:
                units += 1
                if all(line.char_count() <= thresholds.max_cpl for line in block.lines):
                    conforming += 1
    if units == 0:
        return None
    return conforming / units


def reading_speed_conformity(
    doc: SubtitleDocument,
    thresholds: ConformityThresholds = ConformityThresholds(),
    timing_mode: TimingMode = TimingMode.PER_BLOCK,
) -> Optional[float]:
    """Fraction of timed units read at or below the CPS bound.

    Characters of a unit are the sum of its trimmed line counts; no
    synthetic inter-line spaces are added.
    """
    conforming = 0
    units = 0
    for utt in doc.utterances:
        if timing_mode is TimingMode.PER_BLOCK:
            for block in utt.blocks:
                if not block.timed:
                    raise DataError(
                        f"timing unavailable for mode block (utterance {utt.id!r})"
                    )
                units += 1
                if block.char_count() / block.duration_s() <= thresholds.max_cps:
                    conforming += 1
        else:
            if not utt.timed:
                raise DataError(
                    f"timing unavailable for mode utterance (utterance {utt.id!r})"
                )
            units += 1
            if utt.char_count() / utt.duration_s() <= thresholds.max_cps:
                conforming += 1
    if units == 0:
        return None
    return conforming / units


def _break_matches(kind: BreakKind, selection: BreakSelection) -> bool:
    if selection is BreakSelection.BOTH:
        return True
    if selection is BreakSelection.EOL:
        return kind is BreakKind.LINE
    return kind is BreakKind.BLOCK


def segmentation_plausibility(
    tagged: Sequence[TaggedUtterance],
    include_trailing_eob: bool = True,
    direction: BreakDirection = BreakDirection.CONTENT_THEN_FUNCTION,
    breaks: BreakSelection = BreakSelection.BOTH,
    chunk_chink_table=None,
) -> Optional[float]:
    """Fraction of break tokens placed plausibly.

    A break is plausible when the nearest preceding word is punctuation,
    or when it separates a content word from a following function word
    (either order when `direction` allows).  An utterance-final break is
    plausible only after punctuation.
    """
    plausible = 0
    counted = 0
    for utt_index, utt in enumerate(tagged):
        items = utt.items
        for pos, (token, _) in enumerate(items):
            if not token.is_break or not _break_matches(token.break_kind, breaks):
                continue
            prev_tag = None
            for back in range(pos - 1, -1, -1):
                if not items[back][0].is_break:
                    prev_tag = items[back][1]
                    break
            next_tag = None
            has_next = False
            for fwd in range(pos + 1, len(items)):
                if not items[fwd][0].is_break:
                    next_tag = items[fwd][1]
                    has_next = True
                    break
            if prev_tag is None:
                raise DataError(
                    f"break without a preceding word token (utterance index {utt_index})"
                )
            if not has_next:
                # Utterance-final break.
                if not include_trailing_eob:
                    continue
                counted += 1
                if classify_chunk_chink(prev_tag, chunk_chink_table) is WordClass.PUNCT:
                    plausible += 1
                continue
            counted += 1
            prev_class = classify_chunk_chink(prev_tag, chunk_chink_table)
            next_class = classify_chunk_chink(next_tag, chunk_chink_table)
            if prev_class is WordClass.PUNCT:
                plausible += 1
            elif prev_class is WordClass.CONTENT and next_class is WordClass.FUNCTION:
                plausible += 1
            elif (
                direction is BreakDirection.EITHER_ORDER
                and prev_class is WordClass.FUNCTION
                and next_class is WordClass.CONTENT
            ):
                plausible += 1
    if counted == 0:
        return None
    return plausible / counted


def conformity_report(
    doc: SubtitleDocument,
    thresholds: ConformityThresholds = ConformityThresholds(),
    aggregation: LengthAggregation = LengthAggregation.PER_LINE,
    tagged: Optional[Sequence[TaggedUtterance]] = None,
    include_trailing_eob: bool = True,
    direction: BreakDirection = BreakDirection.CONTENT_THEN_FUNCTION,
    breaks: BreakSelection = BreakSelection.BOTH,
) -> ConformityReport:
    """All conformity rates for one document; rates whose denominator is
    empty (or whose inputs are missing) are reported as None."""
    lines = sum(len(block.lines) for utt in doc.utterances for block in utt.blocks)
    all_blocks_timed = all(
        block.timed for utt in doc.utterances for block in utt.blocks
    )
    all_utts_timed = all(utt.timed for utt in doc.utterances)
    if all_blocks_timed and lines > 0:
        speed = reading_speed_conformity(doc, thresholds, TimingMode.PER_BLOCK)
        timed_units = sum(len(utt.blocks) for utt in doc.utterances)
    elif all_utts_timed and lines > 0:
        speed = reading_speed_conformity(doc, thresholds, TimingMode.PER_UTTERANCE)
        timed_units = len(doc.utterances)
    else:
        speed = None
        timed_units = 0
    if tagged is not None:
        seg = segmentation_plausibility(
            tagged,
            include_trailing_eob=include_trailing_eob,
            direction=direction,
            breaks=breaks,
        )
        n_breaks = sum(
            1
            for utt in tagged
            for token, _ in utt.items
            if token.is_break and _break_matches(token.break_kind, breaks)
        )
    else:
        seg = None
        n_breaks = 0
    return ConformityReport(
        length_rate=length_conformity(doc, thresholds, aggregation),
        reading_speed_rate=speed,
        segmentation_rate=seg,
        lines=lines,
        timed_units=timed_units,
        breaks=n_breaks,
    )
