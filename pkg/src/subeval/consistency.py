"""Caption-subtitle consistency metrics: structural, lexical,
line-count, and character ratio.

Lexical consistency matches blocks positionally (i-th caption block to
i-th subtitle block).  A token is consistent when at least one of its
alignment links lands in the same-index block on the other side;
unaligned tokens are inconsistent unless `skip_unaligned` excludes them
from the denominator.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Optional, Sequence

from .align import SentenceAlignment
from .errors import DataError
from .model import Utterance, UtterancePair
from .textproc import Scheme, tokenize

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class BlockIndexMap:
    word_to_block: tuple[int, ...]
    blocks: int

    @property
    def words(self) -> int:
        return len(self.word_to_block)


@dataclass(frozen=True)
class LexicalConsistencyPair:
    lex_c2s: float
    lex_s2c: float
    lex_pair: float
    inconsistent_tokens: tuple[tuple[str, int, str], ...]


@dataclass(frozen=True)
class ConsistencyReport:
    structural: float
    lexical: float
    line_count: Optional[float]
    char_ratio: float
    per_pair: tuple[LexicalConsistencyPair, ...]


def structural_consistency(pairs: Sequence[UtterancePair]) -> float:
    """Fraction of pairs whose caption and subtitle have equal block
    counts."""
    if not pairs:
        raise DataError("empty pair list")
    same = sum(
        1 for p in pairs if len(p.caption.blocks) == len(p.subtitle.blocks)
    )
    return same / len(pairs)


def block_index_map(
    utt: Utterance, scheme: Scheme = Scheme.MT_DETACHED, lang: str = "en"
) -> BlockIndexMap:
    """Block index of each non-break token, in token order."""
    tokens = tokenize(utt.text(), scheme, lang=lang)
    mapping = []
    block = 0
    for token in tokens.tokens:
        if token.is_break:
            if token.surface == "<eob>":
                block += 1
        else:
            mapping.append(block)
    return BlockIndexMap(tuple(mapping), blocks=len(utt.blocks))


def _directional_consistency(
    own_map: BlockIndexMap,
    other_map: BlockIndexMap,
    alignment: SentenceAlignment,
    own_words: Sequence[str],
    side: str,
    context: str,
    skip_unaligned: bool,
) -> tuple[float, list[tuple[str, int, str]]]:
    links_by_own: dict[int, list[int]] = {}
    for i, j in alignment.links:
        if not (0 <= i < own_map.words) or not (0 <= j < other_map.words):
            raise DataError(
                f"alignment link {i}-{j} out of bounds (utterance {context!r})"
            )
        links_by_own.setdefault(i, []).append(j)
    consistent = 0
    denominator = 0
    inconsistent: list[tuple[str, int, str]] = []
    for i, block in enumerate(own_map.word_to_block):
        linked = links_by_own.get(i)
        if linked is None:
            if skip_unaligned:
                continue
            denominator += 1
            inconsistent.append((side, i, own_words[i]))
            continue
        denominator += 1
        if any(other_map.word_to_block[j] == block for j in linked):
            consistent += 1
        else:
            inconsistent.append((side, i, own_words[i]))
    if denominator == 0:
        return 1.0, inconsistent
    return consistent / denominator, inconsistent


def lexical_consistency_pair(
    pair: UtterancePair,
    align_c2s: SentenceAlignment,
    align_s2c: SentenceAlignment,
    scheme: Scheme = Scheme.MT_DETACHED,
    caption_lang: str = "en",
    subtitle_lang: str = "en",
    skip_unaligned: bool = False,
) -> LexicalConsistencyPair:
    """Both directional scores and their average for one pair.

    `align_c2s` links caption token indices to subtitle token indices;
    `align_s2c` links subtitle token indices to caption token indices.
    Indices refer to break-stripped tokens under `scheme`.
    """
    cap_map = block_index_map(pair.caption, scheme, caption_lang)
    sub_map = block_index_map(pair.subtitle, scheme, subtitle_lang)
    cap_words = tokenize(pair.caption.text(), scheme, caption_lang).words()
    sub_words = tokenize(pair.subtitle.text(), scheme, subtitle_lang).words()
    lex_c2s, bad_c = _directional_consistency(
        cap_map, sub_map, align_c2s, cap_words, "caption", pair.id, skip_unaligned
    )
    lex_s2c, bad_s = _directional_consistency(
        sub_map, cap_map, align_s2c, sub_words, "subtitle", pair.id, skip_unaligned
    )
    return LexicalConsistencyPair(
        lex_c2s=lex_c2s,
        lex_s2c=lex_s2c,
        lex_pair=(lex_c2s + lex_s2c) / 2.0,
        inconsistent_tokens=tuple(bad_c + bad_s),
    )


def corpus_lexical_consistency(
    pairs: Sequence[UtterancePair],
    alignments: Sequence[tuple[SentenceAlignment, SentenceAlignment]],
    scheme: Scheme = Scheme.MT_DETACHED,
    caption_lang: str = "en",
    subtitle_lang: str = "en",
    skip_unaligned: bool = False,
) -> tuple[float, list[LexicalConsistencyPair]]:
    """Unweighted mean of lex_pair over the corpus, plus per-pair
    diagnostics."""
    if len(pairs) != len(alignments):
        raise DataError(
            f"pair/alignment count mismatch: {len(pairs)} vs {len(alignments)}"
        )
    if not pairs:
        raise DataError("empty pair list")
    per_pair = [
        lexical_consistency_pair(
            pair, c2s, s2c, scheme, caption_lang, subtitle_lang, skip_unaligned
        )
        for pair, (c2s, s2c) in zip(pairs, alignments)
    ]
    return sum(p.lex_pair for p in per_pair) / len(per_pair), per_pair


def line_count_consistency(pairs: Sequence[UtterancePair]) -> Optional[float]:
    """Fraction of positionally paired blocks with equal line counts,
    over structurally consistent pairs only."""
    equal = 0
    total = 0
    for pair in pairs:
        if len(pair.caption.blocks) != len(pair.subtitle.blocks):
            continue
        for cap_block, sub_block in zip(pair.caption.blocks, pair.subtitle.blocks):
            total += 1
            if len(cap_block.lines) == len(sub_block.lines):
                equal += 1
    if total == 0:
        log.warning("no structurally consistent pairs; line-count rate undefined")
        return None
    return equal / total


def char_ratio(pairs: Sequence[UtterancePair]) -> float:
    """Total caption characters over total subtitle characters."""
    if not pairs:
        raise DataError("empty pair list")
    cap_chars = sum(p.caption.char_count() for p in pairs)
    sub_chars = sum(p.subtitle.char_count() for p in pairs)
    if sub_chars == 0:
        raise DataError("subtitle corpus has zero characters")
    return cap_chars / sub_chars


def subtitle_block_judgements(
    pair: UtterancePair,
    result: LexicalConsistencyPair,
    scheme: Scheme = Scheme.MT_DETACHED,
    subtitle_lang: str = "en",
) -> list[bool]:
    """Per subtitle block: True when every token of the block is
    consistent."""
    sub_map = block_index_map(pair.subtitle, scheme, subtitle_lang)
    bad_blocks = {
        sub_map.word_to_block[index]
        for side, index, _ in result.inconsistent_tokens
        if side == "subtitle"
    }
    return [b not in bad_blocks for b in range(sub_map.blocks)]


def validate_lexical_metric(
    automatic: Sequence[float],
    manual: Sequence[float],
    auto_judgements: Sequence[bool],
    manual_judgements: Sequence[bool],
) -> tuple[float, float]:
    """Mean absolute error between score vectors and per-block
    judgement agreement."""
    if len(automatic) != len(manual):
        raise DataError(
            f"score vector length mismatch: {len(automatic)} vs {len(manual)}"
        )
    if len(auto_judgements) != len(manual_judgements):
        raise DataError(
            f"judgement vector length mismatch: {len(auto_judgements)} vs {len(manual_judgements)}"
        )
    if not automatic or not auto_judgements:
        raise DataError("empty validation vectors")
    mae = sum(abs(a - m) for a, m in zip(automatic, manual)) / len(automatic)
    agreement = sum(
        1 for a, m in zip(auto_judgements, manual_judgements) if a == m
    ) / len(auto_judgements)
    return mae, agreement


def consistency_report(
    pairs: Sequence[UtterancePair],
    alignments: Sequence[tuple[SentenceAlignment, SentenceAlignment]],
    scheme: Scheme = Scheme.MT_DETACHED,
    caption_lang: str = "en",
    subtitle_lang: str = "en",
    skip_unaligned: bool = False,
) -> ConsistencyReport:
    lexical, per_pair = corpus_lexical_consistency(
        pairs, alignments, scheme, caption_lang, subtitle_lang, skip_unaligned
    )
    return ConsistencyReport(
        structural=structural_consistency(pairs),
        lexical=lexical,
        line_count=line_count_consistency(pairs),
        char_ratio=char_ratio(pairs),
        per_pair=tuple(per_pair),
    )
