import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from decorel.dsl import DslError, NetworkDocument, Par, Ref, Seq, format_expr, format_network, parse, pretty
from decorel.dynam import mass_action
from decorel.gen import boundary, random_open_network

INTRO = """
# A + B -> 2C feeding C -> D
network main
  species A B C D
  reaction alpha: A + B -> 2 C rate 1
  reaction beta: C -> D rate 1
  inputs a1->A a2->A b->B
  outputs d->D
end
"""

LOOP = """
network n
  species A
  reaction d: A -> 0 rate 3/2
  inputs x->A
  outputs x->A
end
"""


def test_intro_network():
    onet = parse(INTRO).evaluate("main")
    assert onet.network.species.names() == ("A", "B", "C", "D")
    alpha, beta = onet.network.reactions
    assert alpha.inputs == (1, 1, 0, 0) and alpha.outputs == (0, 0, 2, 0)
    assert beta.inputs == (0, 0, 1, 0) and beta.outputs == (0, 0, 0, 1)
    assert onet.inputs.dom.names() == ("a1", "a2", "b")
    assert onet.inputs.table == (0, 0, 1) and onet.outputs.table == (3,)
    assert mass_action(onet.network).space.size == 4


def test_empty_document():
    assert parse("") == NetworkDocument()
    assert parse("# only a comment\n\n") == NetworkDocument()
    assert pretty(NetworkDocument()) == ""


def test_rates_and_empty_sides():
    doc = parse("""
network m
  species A B
  reaction in: 0 -> A rate 0.25
  reaction out: 2 A + B -> 0 rate 3/2
end
""")
    r_in, r_out = doc.evaluate("m").network.reactions
    assert r_in.rate == Fraction(1, 4) and r_in.inputs == (0, 0) and r_in.outputs == (1, 0)
    assert r_out.inputs == (2, 1) and r_out.rate == Fraction(3, 2)


@pytest.mark.parametrize("text, line, column", [
    ("network m\n  species A B\n  reaction r: A + -> B rate 1\nend\n", 3, 19),
    ("network m\n  species A\n  reaction r: A -> C rate 1\nend\n", 3, 20),
    ("network m\n  species A\n  reaction r: A -> A rate 0\nend\n", 3, 27),
    ("network m\n  species A\n  reaction r: A -> A rate -1\nend\n", 3, 27),
    ("network m\n  species A A\nend\n", 2, 13),
    ("network m\n  species A\n  inputs x->A x->A\nend\n", 3, 15),
    ("network m\n  species A\n  inputs x A\nend\n", 3, 12),
    ("network m\n  species A\n", 3, 1),
    ("species A\n", 1, 1),
    ("network rate\nend\n", 1, 9),
    ("network m\n  species A $\nend\n", 2, 13),
    ("compose c = nowhere\n", 1, 1),
    ("network m\n  species A\n  reaction r: 0 A -> A rate 1\nend\n", 3, 15),
])
def test_syntax_errors_carry_position(text, line, column):
    with pytest.raises(DslError) as info:
        parse(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_malformed_arrow_message():
    with pytest.raises(DslError, match="species name at '->'"):
        parse("network m\n  species A B\n  reaction r: A + -> B rate 1\nend\n")


def test_sequential_composition_checks_labels():
    text = LOOP + """
network other
  species B
  inputs y->B
  outputs y->B
end
compose bad = n ; other
"""
    with pytest.raises(DslError, match="boundary mismatch"):
        parse(text)


def test_composition_merges_species():
    doc = parse(LOOP + "compose twice = n ; n\n")
    onet = doc.evaluate("twice")
    assert onet.network.species.size == 1
    assert mass_action(onet.network).components[0].format(["A"]) == "-3*A"


def test_precedence():
    doc = parse(LOOP + "compose e = n | n ; n | n\ncompose f = n | (n | n)\n")
    assert doc.compositions["e"] == Seq(Par(Ref("n"), Ref("n")), Par(Ref("n"), Ref("n")))
    assert doc.compositions["f"] == Par(Ref("n"), Par(Ref("n"), Ref("n")))
    assert format_expr(doc.compositions["f"]) == "n | (n | n)"


def test_unknown_name_lookup():
    with pytest.raises(KeyError):
        parse(LOOP).evaluate("missing")


@st.composite
def exprs(draw, width, depth=3):
    if width == 1 and (depth == 0 or draw(st.booleans())):
        return Ref("n")
    if width > 1 and (depth == 0 or draw(st.booleans())):
        k = draw(st.integers(1, width - 1))
        return Par(draw(exprs(k, max(depth - 1, 0))), draw(exprs(width - k, max(depth - 1, 0))))
    return Seq(draw(exprs(width, depth - 1)), draw(exprs(width, depth - 1)))


@given(st.integers(1, 3).flatmap(exprs))
def test_expression_round_trip(e):
    doc = parse(LOOP + f"compose e = {format_expr(e)}\n")
    assert doc.compositions["e"] == e


@given(st.integers(0, 10**6))
def test_document_round_trip(seed):
    rng = random.Random(seed)
    doc = NetworkDocument()
    for k in range(rng.randint(0, 3)):
        onet = random_open_network(rng, boundary(rng.randint(0, 2), "x"), boundary(rng.randint(0, 2), "y"),
                                   max_order=2)
        doc.networks[f"net{k}"] = onet
    text = pretty(doc)
    again = parse(text)
    assert again == doc
    assert pretty(again) == text


def test_format_network():
    onet = parse(LOOP).evaluate("n")
    assert format_network("n", onet) == LOOP.strip()
