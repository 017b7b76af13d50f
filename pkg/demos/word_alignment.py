"""
EM word alignment with a diagonal prior
=======================================

Trains the lexical translation model that feeds the lexical
consistency metric: IBM Model 1 expectation-maximization, optionally
reweighted by a diagonal position prior, decoded per target word with
Viterbi and exchanged in the Pharaoh "i-j" format.
"""

from subeval.align import (
    BitextPair,
    train_aligner,
    viterbi_align,
    write_pharaoh,
)


def pair(src, tgt):
    return BitextPair(tuple(src.split()), tuple(tgt.split()))


# Two sentence pairs are enough for the pigeonhole effect: "a" must
# translate to "x" because it is the only word the first pair shares.
corpus = [pair("a", "x"), pair("a b", "x y")]
log_likelihoods = []
model = train_aligner(
    corpus,
    iterations=10,
    use_diagonal_prior=False,
    log_likelihoods=log_likelihoods,
)
print(f"t(x|a) = {model.prob('x', 'a'):.4f}")
print("log-likelihood per iteration:",
      [f"{ll:.3f}" for ll in log_likelihoods])

alignment = viterbi_align(model, pair("a b", "x y"))
print("Viterbi links:", write_pharaoh(alignment))

# Model 1 alone cannot break ties: in a corpus of identical two-word
# pairs the two sources stay interchangeable forever.  The diagonal
# prior prefers links near i/m = j/n and resolves the symmetry.
symmetric = [pair("a b", "x y")] * 200
flat = train_aligner(symmetric, iterations=5, use_diagonal_prior=False)
print(f"without prior: t(x|a) = {flat.prob('x', 'a'):.3f}, "
      f"t(x|b) = {flat.prob('x', 'b'):.3f}")

diagonal = train_aligner(symmetric, iterations=5, use_diagonal_prior=True)
print("with prior   :", write_pharaoh(viterbi_align(diagonal, pair("a b", "x y"))))
print(f"trained tension = {diagonal.tension:.3f}")
