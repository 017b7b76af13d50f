#!/usr/bin/env python3
"""Regenerate the committed micro-corpus fixtures under tests/data/micro/.

The reference and hypothesis texts are hand-written below; this script
derives the CoNLL-U tag files and the Pharaoh alignment fixtures from
them so token counts always line up with the MtDetached tokenization.
"""

import os
import sys
import unicodedata

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))

from subeval.markers import parse_marked_text
from subeval.textproc import Scheme, tokenize

OUT = os.path.join(os.path.dirname(__file__), "..", "tests", "data", "micro")

CAPTIONS_REF = """\
Hello everyone, welcome to the show. <eob>
Today we talk about climate change <eol> and its effects. <eob>
The ocean is rising <eob> faster than we thought. <eob>
Scientists measured 1,000 stations <eol> around the world. <eob>
This is not a distant problem. <eob>
It affects farmers, <eob> fishers, <eol> and city dwellers alike. <eob>
In 2050 the coast will look different. <eob>
What can we do about it? <eob>
First, we can reduce emissions <eol> at home and at work. <eob>
Second, we can protect wetlands. <eob>
Wetlands absorb water <eob> like a sponge. <eob>
Third, cities must plan ahead. <eob>
Some cities already built barriers <eol> against the sea. <eob>
Others moved whole neighborhoods. <eob>
This work is expensive, <eob> but waiting costs more. <eob>
Our grandchildren will judge us <eol> by what we do now. <eob>
The good news is simple: <eob> we still have time. <eob>
Every year of action counts. <eob>
So let us start today, <eol> not tomorrow. <eob>
Thank you very much. <eob>
"""

CAPTIONS_HYP = """\
Hello everybody, welcome to the show. <eob>
Today we talk about climate change <eol> and its effect. <eob>
The ocean is rising <eob> faster than we thought. <eob>
Scientists measured 1,000 stations <eol> around the world. <eob>
This is not a distant problem. <eob>
It affects farmers, <eob> fishers <eol> and city dwellers alike. <eob>
In 2050 the coast will look very different. <eob>
What can we do about it? <eob>
First, we can reduce emissions <eob> at home and at work. <eob>
Second, we protect wetlands. <eob>
Wetlands absorb water <eob> like a sponge. <eob>
Third, cities must plan ahead. <eob>
Some cities already built barriers <eol> against the sea. <eob>
Others moved whole neighborhoods. <eob>
This work is expensive, <eob> but waiting costs much more. <eob>
Our grandchildren will judge us <eol> by what we do now. <eob>
The good news is simple: <eob> we still have some time. <eob>
Every year of action counts. <eob>
So let us start today, <eol> not tomorrow. <eob>
Thank you very much. <eob>
"""

SUBTITLES_REF = """\
Bonjour à tous, bienvenue au spectacle. <eob>
Aujourd'hui nous parlons du changement climatique <eol> et de ses effets. <eob>
L'océan monte <eob> plus vite que nous le pensions. <eob>
Les scientifiques ont mesuré 1,000 stations <eol> dans le monde entier. <eob>
Ce n'est pas un problème lointain. <eob>
Il touche les agriculteurs, <eob> les pêcheurs <eol> et les citadins. <eob>
En 2050 la côte sera différente. <eob>
Que pouvons-nous faire ? <eob>
D'abord, nous pouvons réduire les émissions <eol> à la maison et au travail. <eob>
Ensuite, nous pouvons protéger les zones humides. <eob>
Les zones humides absorbent l'eau <eob> comme une éponge. <eob>
Troisièmement, les villes doivent planifier. <eob>
Certaines villes ont déjà construit des barrières <eol> contre la mer. <eob>
D'autres ont déplacé des quartiers entiers. <eob>
Ce travail coûte cher, <eob> mais attendre coûte plus. <eob>
Nos petits-enfants nous jugeront <eol> par nos actes. <eob>
La bonne nouvelle est simple : <eob> il nous reste du temps. <eob>
Chaque année d'action compte. <eob>
Alors commençons aujourd'hui, <eol> pas demain. <eob>
Merci beaucoup. <eob>
"""

SUBTITLES_HYP = """\
Bonjour à tous, bienvenue au spectacle. <eob>
Aujourd'hui nous parlons du climat <eol> et de ses effets. <eob>
L'océan monte plus vite <eob> que nous le pensions. <eob>
Les scientifiques ont mesuré 1,000 stations <eol> dans le monde. <eob>
Ce n'est pas un problème lointain. <eob>
Il touche les agriculteurs, <eob> les pêcheurs <eol> et les citadins. <eob>
En 2050 la côte sera très différente. <eob>
Que pouvons-nous faire ? <eob>
D'abord, nous pouvons réduire les émissions <eob> à la maison et au travail. <eob>
Ensuite, nous protégeons les zones humides. <eob>
Les zones humides absorbent l'eau <eob> comme une éponge. <eob>
Troisièmement, les villes doivent planifier. <eob>
Certaines villes ont construit des barrières <eol> contre la mer. <eob>
D'autres ont déplacé des quartiers. <eob>
Ce travail coûte cher, <eob> mais attendre coûte bien plus. <eob>
Nos petits-enfants nous jugeront <eol> par nos actes. <eob>
La bonne nouvelle est simple : <eob> il nous reste du temps. <eob>
Chaque année d'action compte. <eob>
Alors commençons aujourd'hui, <eol> pas demain. <eob>
Merci beaucoup. <eob>
"""

FUNCTION_WORDS = {
    "the", "a", "an", "to", "of", "and", "or", "but", "in", "on", "at", "by",
    "about", "we", "us", "it", "its", "this", "that", "what", "can", "will",
    "is", "are", "not", "so", "you", "our", "have", "do",
    "le", "la", "les", "l'", "un", "une", "des", "du", "de", "et", "ou",
    "mais", "nous", "vous", "il", "elle", "ce", "ces", "ses", "nos", "que",
    "qui", "au", "aux", "à", "dans", "par", "pas", "est", "ont", "sera",
    "n'", "d'", "doivent", "pouvons",
}

NUMBER_CHARS = set("0123456789,.")


def guess_upos(word: str) -> str:
    if all(unicodedata.category(c).startswith("P") for c in word):
        return "PUNCT"
    if all(c in NUMBER_CHARS for c in word) and any(c.isdigit() for c in word):
        return "NUM"
    if word.lower() in FUNCTION_WORDS:
        return "DET" if word.lower() in ("the", "a", "an", "le", "la", "les", "un", "une", "des") else "ADP"
    return "NOUN"


def write(path: str, content: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(content)


def make_conllu(marked: str, lang: str) -> str:
    doc = parse_marked_text(marked)
    out = []
    for utt in doc.utterances:
        words = tokenize(utt.text(), Scheme.MT_DETACHED, lang).words()
        for i, word in enumerate(words, start=1):
            out.append(
                f"{i}\t{word}\t_\t{guess_upos(word)}\t_\t_\t0\t_\t_\t_"
            )
        out.append("")
    return "\n".join(out) + "\n"


def make_alignments(src_marked: str, tgt_marked: str, src_lang: str, tgt_lang: str) -> str:
    """Monotone diagonal pseudo-alignments over MtDetached tokens;
    every 7th source token left unaligned."""
    src_doc = parse_marked_text(src_marked)
    tgt_doc = parse_marked_text(tgt_marked)
    lines = []
    for s_utt, t_utt in zip(src_doc.utterances, tgt_doc.utterances):
        src = tokenize(s_utt.text(), Scheme.MT_DETACHED, src_lang).words()
        tgt = tokenize(t_utt.text(), Scheme.MT_DETACHED, tgt_lang).words()
        links = []
        for i in range(len(src)):
            if i % 7 == 6:
                continue
            if len(src) == 1:
                j = 0
            else:
                j = round(i * (len(tgt) - 1) / (len(src) - 1))
            links.append(f"{i}-{j}")
        lines.append(" ".join(links))
    return "\n".join(lines) + "\n"


def main() -> None:
    os.makedirs(OUT, exist_ok=True)
    write(os.path.join(OUT, "captions.ref"), CAPTIONS_REF)
    write(os.path.join(OUT, "captions.hyp"), CAPTIONS_HYP)
    write(os.path.join(OUT, "subtitles.ref"), SUBTITLES_REF)
    write(os.path.join(OUT, "subtitles.hyp"), SUBTITLES_HYP)
    write(os.path.join(OUT, "captions.hyp.conllu"), make_conllu(CAPTIONS_HYP, "en"))
    write(os.path.join(OUT, "subtitles.hyp.conllu"), make_conllu(SUBTITLES_HYP, "fr"))
    write(
        os.path.join(OUT, "align.c2s"),
        make_alignments(CAPTIONS_HYP, SUBTITLES_HYP, "en", "fr"),
    )
    write(
        os.path.join(OUT, "align.s2c"),
        make_alignments(SUBTITLES_HYP, CAPTIONS_HYP, "fr", "en"),
    )


if __name__ == "__main__":
    main()
