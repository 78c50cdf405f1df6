import itertools

import pytest
from hypothesis import given, strategies as st

from decorel import finset as fs
from decorel.finset import CodomainMismatch, FinFunction, FinSet, FinSetError

from conftest import closure_classes, maps


def kernel(f):
    return {frozenset(f.preimage(y)) for y in f.image()}


def test_identity_tables():
    assert fs.identity(0).table == ()
    assert fs.identity(3).table == (0, 1, 2)


def test_compose_examples():
    f = FinFunction(2, 3, [1, 2])
    g = FinFunction(3, 1, [0, 0, 0])
    assert fs.compose(f, g).table == (0, 0)
    s = FinFunction(2, 2, [0, 1])
    t = FinFunction(2, 2, [1, 0])
    assert fs.compose(s, t).table == (1, 0)


def test_compose_rejects_mismatch():
    with pytest.raises(CodomainMismatch):
        fs.compose(FinFunction(1, 2, [0]), FinFunction(3, 1, [0, 0, 0]))


def test_bad_table():
    with pytest.raises(FinSetError):
        FinFunction(2, 2, [0, 2])
    with pytest.raises(FinSetError):
        FinFunction(2, 2, [0])


def test_associativity_exhaustive():
    for a, b, c, d in itertools.product(range(3), repeat=4):
        if (a and not b) or (b and not c) or (c and not d):
            continue
        for f in fs.all_functions(a, b):
            for g in fs.all_functions(b, c):
                for h in list(fs.all_functions(c, d))[:4]:
                    assert fs.compose(fs.compose(f, g), h) == fs.compose(f, fs.compose(g, h))


@given(maps())
def test_unit_laws(f):
    assert fs.compose(fs.identity(f.dom), f) == f
    assert fs.compose(f, fs.identity(f.cod)) == f


def test_coproduct_layout():
    S, inl, inr = fs.coproduct(2, 3)
    assert S.size == 5 and inl.table == (0, 1) and inr.table == (2, 3, 4)
    S, inl, inr = fs.coproduct(0, 4)
    assert inr.table == (0, 1, 2, 3)


def test_copair_examples():
    one = fs.identity(1)
    assert fs.copair(one, one).table == (0, 0)
    g = FinFunction(2, 3, [2, 0])
    assert fs.copair(fs.initial(3), g).table == g.table


@given(st.data())
def test_copair_universal(data):
    X, Y, N = (data.draw(st.integers(0, 3)) for _ in range(3))
    N = max(N, 1)
    f, g = data.draw(maps(X, N)), data.draw(maps(Y, N))
    _, inl, inr = fs.coproduct(X, Y)
    h = fs.copair(f, g)
    assert fs.compose(inl, h) == f and fs.compose(inr, h) == g


def test_coequalizer_examples():
    f = FinFunction(2, 3, [0, 2])
    assert fs.coequalizer(f, f).table == (0, 1, 2)
    assert fs.coequalizer(FinFunction(1, 2, [0]), FinFunction(1, 2, [1])).table == (0, 0)
    q = fs.coequalizer(FinFunction(2, 4, [0, 2]), FinFunction(2, 4, [1, 3]))
    assert q.table == (0, 0, 1, 1)


@given(st.data())
def test_coequalizer_matches_closure(data):
    k, n = data.draw(st.integers(0, 4)), data.draw(st.integers(1, 5))
    f, g = data.draw(maps(k, n)), data.draw(maps(k, n))
    q = fs.coequalizer(f, g)
    assert kernel(q) == closure_classes(n, list(zip(f.table, g.table)))
    assert fs.compose(f, q) == fs.compose(g, q)
    assert fs.is_epi(q)


def test_pushout_examples():
    jN, jM = fs.pushout(fs.initial(2), fs.initial(3))
    assert jN.table == (0, 1) and jM.table == (2, 3, 4)
    jN, jM = fs.pushout(fs.identity(1), fs.identity(1))
    assert jN.cod.size == 1 and jN.table == (0,) and jM.table == (0,)
    jN, jM = fs.pushout(FinFunction(1, 2, [0]), FinFunction(1, 2, [0]))
    assert jN.cod.size == 3


@given(st.data())
def test_pushout_commutes_and_is_jointly_epi(data):
    k = data.draw(st.integers(0, 3))
    f = data.draw(maps(k, data.draw(st.integers(1, 3))))
    g = data.draw(maps(k, data.draw(st.integers(1, 3))))
    jN, jM = fs.pushout(f, g)
    assert fs.compose(f, jN) == fs.compose(g, jM)
    assert fs.is_epi(fs.copair(jN, jM))
    n = f.cod.size
    pairs = [(a, n + b) for a, b in zip(f.table, g.table)]
    assert kernel(fs.copair(jN, jM)) == closure_classes(n + g.cod.size, pairs)


def test_pushout_labels_from_least_member():
    N = FinSet(2, ["a", "b"])
    M = FinSet(1, ["c"])
    jN, jM = fs.pushout(FinFunction(1, N, [1]), FinFunction(1, M, [0]))
    assert jN.cod.names() == ("a", "b")


def test_epi_mono_examples():
    f = FinFunction(2, 3, [2, 0])
    e, m = fs.epi_mono_factor(f)
    assert fs.is_iso(e) and m == f
    e, m = fs.epi_mono_factor(FinFunction(3, 3, [0, 0, 0]))
    assert e.table == (0, 0, 0) and e.cod.size == 1 and m.table == (0,)


def test_epi_mono_exhaustive():
    for n, k in itertools.product(range(5), repeat=2):
        for f in fs.all_functions(n, k):
            e, m = fs.epi_mono_factor(f)
            assert fs.compose(e, m) == f and fs.is_epi(e) and fs.is_mono(m)


def test_predicates():
    i = fs.identity(2)
    assert fs.is_epi(i) and fs.is_mono(i) and fs.is_iso(i)
    c = FinFunction(2, 1, [0, 0])
    assert fs.is_epi(c) and not fs.is_mono(c)
    j = FinFunction(1, 2, [1])
    assert fs.is_mono(j) and not fs.is_epi(j)


@given(st.permutations(range(4)))
def test_inverse(p):
    f = FinFunction(4, 4, p)
    assert fs.compose(f, fs.inverse(f)) == fs.identity(4)


def test_inverse_rejects_non_bijection():
    with pytest.raises(FinSetError):
        fs.inverse(FinFunction(2, 1, [0, 0]))


def test_all_functions_count():
    assert sum(1 for _ in fs.all_functions(3, 2)) == 8
    assert sum(1 for _ in fs.all_functions(0, 0)) == 1
    assert sum(1 for _ in fs.all_functions(2, 0)) == 0
