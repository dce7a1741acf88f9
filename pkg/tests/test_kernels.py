import numpy as np
import pytest

from braidjones import kernels
from braidjones.braid import BraidWord, ClosureSpec, parse_braid
from braidjones.kauffman import MAX_CROSSINGS, CrossingCapExceeded, bracket_state_data, kauffman_oracle
from braidjones.rep import irrep_block
from braidjones.young import RootParams
from conftest import random_braid


def test_backend_selection():
    assert "python" in kernels.available_backends()
    assert kernels.backend() in kernels.available_backends()
    with pytest.raises(ValueError):
        kernels.set_backend("nope")
    before = kernels.backend()
    with kernels.use_backend("python"):
        assert kernels.backend() == "python"
    assert kernels.backend() == before


def test_apply_word_backends_agree():
    block = irrep_block((4, 3, 2), RootParams(3, 8))
    rng = np.random.default_rng(0)
    word = rng.integers(0, block.diag.shape[0], size=60)
    vecs = rng.normal(size=(block.dim, 5)) + 1j * rng.normal(size=(block.dim, 5))
    outs = []
    for name in kernels.available_backends():
        v = vecs.copy()
        with kernels.use_backend(name):
            kernels.apply_word(block.partner, block.diag, block.off, word, v)
        outs.append(v)
    for o in outs[1:]:
        assert np.abs(o - outs[0]).max() < 1e-12


def test_bracket_histogram_backends_agree():
    rng = np.random.default_rng(1)
    for _ in range(5):
        b = random_braid(rng, 4, 9)
        spec = ClosureSpec.generalized(1, 2)
        data = bracket_state_data(b, spec)
        hists = []
        for name in kernels.available_backends():
            with kernels.use_backend(name):
                hists.append(kernels.bracket_histogram(*data))
        for h in hists[1:]:
            assert (h == hists[0]).all()
        assert hists[0].sum() == 2 ** b.length


def test_oracle_examples(backend):
    for l in (5, 7, 8):
        assert kauffman_oracle(ClosureSpec.plat(2), BraidWord.identity(2), l) == pytest.approx(1.0)
        q2 = 2 * np.cos(np.pi / l)
        for n in range(1, 5):
            assert kauffman_oracle(ClosureSpec.trace(n), BraidWord.identity(n), l) == pytest.approx(q2 ** (n - 1))


def test_oracle_cap():
    b = BraidWord(2, ((1, 1),) * (MAX_CROSSINGS + 1))
    with pytest.raises(CrossingCapExceeded):
        kauffman_oracle(ClosureSpec.trace(2), b, 5)
    with pytest.raises(ValueError):
        kauffman_oracle(ClosureSpec.trace(2), BraidWord.identity(2), 2)


def test_oracle_mirror_invariant():
    b = parse_braid("n:4; word: 2 -3 2")
    mirror = BraidWord(4, tuple((i, -s) for i, s in b.letters))
    assert kauffman_oracle(ClosureSpec.plat(4), mirror, 7) == pytest.approx(kauffman_oracle(ClosureSpec.plat(4), b, 7))
