"""
Transcription and translation quality: WER, BLEU, significance
==============================================================

Walks through the quality metrics on a tiny in-memory corpus: word
error rate on normalized text, corpus BLEU that treats subtitle break
tokens as ordinary tokens, and the pairwise bootstrap significance
test between two systems.
"""

from subeval.markers import parse_marked_text
from subeval.quality import bootstrap_significance, corpus_bleu, wer

# A reference transcript and two competing system outputs, one
# utterance per line in the inline-marker format.
reference = parse_marked_text(
    "Hello everyone, welcome to the show. <eob>\n"
    "Today we talk about climate change <eol> and its effects. <eob>\n"
    "The ocean is rising faster than we thought. <eob>\n"
)
system_a = parse_marked_text(
    "Hello everyone, welcome to the show. <eob>\n"
    "Today we talk about climate change <eol> and its effect. <eob>\n"
    "The ocean is rising faster than we thought. <eob>\n"
)
system_b = parse_marked_text(
    "Hello everybody welcome to a show. <eob>\n"
    "Today we talked about the climate <eol> and its effect. <eob>\n"
    "An ocean is rising fast, we thought. <eob>\n"
)

# WER works on lowercased, unpunctuated words; break tokens are
# dropped before scoring, so only the wording matters here.
for name, system in [("A", system_a), ("B", system_b)]:
    result = wer(system.utterances, reference.utterances)
    print(
        f"system {name}: WER {result.wer:.2f} "
        f"(S={result.substitutions} D={result.deletions} I={result.insertions})"
    )

# BLEU keeps the break tokens: moving an <eob> changes the n-grams and
# therefore the score, which is exactly what we want when evaluating
# subtitle segmentation jointly with wording.
for name, system in [("A", system_a), ("B", system_b)]:
    score = corpus_bleu(system.utterances, reference.utterances)
    print(f"system {name}: BLEU {score.score:.2f}  BP={score.brevity_penalty:.3f}")

moved = parse_marked_text(
    "Hello everyone, welcome to the show. <eob>\n"
    "Today we talk about <eol> climate change and its effects. <eob>\n"
    "The ocean is rising faster than we thought. <eob>\n"
)
with_breaks = corpus_bleu(moved.utterances, reference.utterances).score
without_breaks = corpus_bleu(
    moved.utterances, reference.utterances, keep_breaks=False
).score
print(f"moved break only: BLEU {with_breaks:.2f} with breaks, "
      f"{without_breaks:.2f} without")

# Is system A significantly better than system B?  The bootstrap
# resamples utterances with replacement and counts how often the
# worse system catches up.  Everything is deterministic given a seed.
result = bootstrap_significance(
    system_a.utterances,
    system_b.utterances,
    reference.utterances,
    metric="bleu",
    resamples=1000,
    seed=42,
)
print(
    f"better system: {result.better_system}, p = {result.p_value:.3f}, "
    f"mean delta = {result.delta_mean:.2f} BLEU"
)
