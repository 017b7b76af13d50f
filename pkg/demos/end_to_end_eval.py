"""
End-to-end evaluation of one system
===================================

Runs the full pipeline on the bundled 20-utterance English/French
corpus: quality (WER on captions, BLEU on subtitles), conformity of
both sides, and caption-subtitle consistency, collected into one JSON
plus TSV report.  The same run is available from the shell as
``subeval eval ...``.
"""

import os

from subeval.cli import main

HERE = os.path.dirname(__file__)
MICRO = os.path.join(HERE, "..", "tests", "data", "micro")

argv = [
    "eval",
    "--captions-hyp", os.path.join(MICRO, "captions.hyp"),
    "--captions-ref", os.path.join(MICRO, "captions.ref"),
    "--subtitles-hyp", os.path.join(MICRO, "subtitles.hyp"),
    "--subtitles-ref", os.path.join(MICRO, "subtitles.ref"),
    # Pre-computed Pharaoh alignments; drop these two flags and pass
    # --train-bitext to train the aligner on the fly instead.
    "--align-c2s", os.path.join(MICRO, "align.c2s"),
    "--align-s2c", os.path.join(MICRO, "align.s2c"),
    # POS tags enable the segmentation-plausibility rate.
    "--pos-captions", os.path.join(MICRO, "captions.hyp.conllu"),
    "--pos-subtitles", os.path.join(MICRO, "subtitles.hyp.conllu"),
    "--segmentation",
    "--caption-lang", "en",
    "--subtitle-lang", "fr",
    "--system-name", "demo-system",
    "--out", "both",
]

raise SystemExit(main(argv))
