import os

import pytest

from subeval.align import load_pharaoh
from subeval.markers import load_marked_text
from subeval.model import pair_documents

DATA = os.path.join(os.path.dirname(__file__), "data")
MICRO = os.path.join(DATA, "micro")
PAPER = os.path.join(DATA, "paper_example")


@pytest.fixture(scope="session")
def micro_paths():
    return {
        "captions_ref": os.path.join(MICRO, "captions.ref"),
        "captions_hyp": os.path.join(MICRO, "captions.hyp"),
        "subtitles_ref": os.path.join(MICRO, "subtitles.ref"),
        "subtitles_hyp": os.path.join(MICRO, "subtitles.hyp"),
        "pos_captions": os.path.join(MICRO, "captions.hyp.conllu"),
        "pos_subtitles": os.path.join(MICRO, "subtitles.hyp.conllu"),
        "align_c2s": os.path.join(MICRO, "align.c2s"),
        "align_s2c": os.path.join(MICRO, "align.s2c"),
    }


@pytest.fixture(scope="session")
def micro_docs(micro_paths):
    return {
        "captions_ref": load_marked_text(micro_paths["captions_ref"]),
        "captions_hyp": load_marked_text(micro_paths["captions_hyp"]),
        "subtitles_ref": load_marked_text(micro_paths["subtitles_ref"]),
        "subtitles_hyp": load_marked_text(micro_paths["subtitles_hyp"]),
    }


@pytest.fixture(scope="session")
def micro_raw(micro_paths):
    def read(key):
        with open(micro_paths[key], encoding="utf-8") as fh:
            return [line.rstrip("\n") for line in fh]

    return {key: read(key) for key in
            ("captions_ref", "captions_hyp", "subtitles_ref", "subtitles_hyp")}


@pytest.fixture(scope="session")
def paper_example():
    captions = load_marked_text(os.path.join(PAPER, "captions.txt"))
    subtitles = load_marked_text(os.path.join(PAPER, "subtitles.txt"))
    pair = pair_documents(captions, subtitles)[0]
    align_c2s = load_pharaoh(os.path.join(PAPER, "align.c2s"))[0]
    align_s2c = load_pharaoh(os.path.join(PAPER, "align.s2c"))[0]
    return pair, align_c2s, align_s2c


@pytest.fixture(scope="session")
def paper_paths():
    return {
        "captions": os.path.join(PAPER, "captions.txt"),
        "subtitles": os.path.join(PAPER, "subtitles.txt"),
        "align_c2s": os.path.join(PAPER, "align.c2s"),
        "align_s2c": os.path.join(PAPER, "align.s2c"),
    }
