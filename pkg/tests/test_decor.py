import pytest
from hypothesis import given, strategies as st

from decorel import finset as fs
from decorel.cospan import Cospan, FactSys, FootMismatch, braiding, identity_cospan, iso_equal
from decorel.decor import (
    DecDataMorphism,
    FunctorMismatch,
    GraphDecoration,
    SourceMismatch,
    apply_decdata_morphism,
    decorate,
    decorated_braiding,
    decorated_compose,
    decorated_equal,
    decorated_identity,
    decorated_tensor,
    identity_decdata,
    lift,
    scale_edges,
)
from decorel.finset import FinFunction
from decorel.laws import check_frobenius, decorated_ops

from conftest import cospans, edges

G = GraphDecoration()


@st.composite
def graph_morphism(draw, X, Y, max_edges=2):
    c = draw(cospans(X, Y, max_apex=3))
    return decorate(c, draw(edges(c.apex.size, max_edges)), G)


@st.composite
def composable_graphs(draw, n=2):
    feet = [draw(st.integers(0, 2)) for _ in range(n + 1)]
    return [draw(graph_morphism(feet[k], feet[k + 1])) for k in range(n)]


def test_graph_transport():
    assert G.push(FinFunction(3, 2, [0, 0, 1]), ((0, 2), (1, 2))) == ((0, 1), (0, 1))
    # the edge touching the dropped point disappears
    assert G.pull(FinFunction(2, 3, [2, 0]), ((0, 1), (0, 2))) == ((0, 1),)
    with pytest.raises(ValueError):
        G.pull(FinFunction(2, 1, [0, 0]), ())
    assert G.laxator(fs.FinSet(2), ((0, 1),), fs.FinSet(1), ((0, 0),)) == ((0, 1), (2, 2))


def test_graph_rejects_iso_all():
    with pytest.raises(ValueError):
        GraphDecoration(FactSys.ISO_ALL)


def test_empty_decoration():
    assert G.empty(fs.FinSet(3)) == ()
    assert () in G.on_object(fs.FinSet(0))
    assert ((0, 5),) not in G.on_object(fs.FinSet(2))


def test_two_edges_after_composition():
    # one edge on each apex; the shared foot glues them at one point
    GC = GraphDecoration(FactSys.ALL_ISO)
    leg = Cospan(FinFunction(1, 2, [0]), FinFunction(1, 2, [1]))
    c = decorated_compose(decorate(leg, ((0, 1),), GC), decorate(leg, ((0, 1),), GC))
    assert c.apex.size == 3
    assert c.decoration == ((0, 1), (1, 2))
    # as corelations the glued middle point is unreachable and takes both edges with it
    c = decorated_compose(decorate(leg, ((0, 1),), G), decorate(leg, ((0, 1),), G))
    assert c.apex.size == 2 and c.decoration == ()


@given(graph_morphism(2, 1))
def test_unit_laws(f):
    assert decorated_equal(decorated_compose(decorated_identity(2, G), f), f)
    assert decorated_equal(decorated_compose(f, decorated_identity(1, G)), f)


@given(composable_graphs(3))
def test_associativity(triple):
    f, g, h = triple
    lhs = decorated_compose(decorated_compose(f, g), h)
    rhs = decorated_compose(f, decorated_compose(g, h))
    assert decorated_equal(lhs, rhs)


@given(graph_morphism(1, 2))
def test_tensor_unit(f):
    empty = decorated_identity(0, G)
    assert decorated_equal(decorated_tensor(f, empty), f)
    assert decorated_equal(decorated_tensor(empty, f), f)


def test_tensor_is_disjoint_union():
    a = decorate(identity_cospan(2), ((0, 1),), G)
    b = decorate(identity_cospan(1), ((0, 0),), G)
    assert decorated_tensor(a, b).decoration == ((0, 1), (2, 2))


@given(composable_graphs(2), composable_graphs(2))
def test_interchange(p, q):
    (a, c), (b, d) = p, q
    lhs = decorated_compose(decorated_tensor(a, b), decorated_tensor(c, d))
    rhs = decorated_tensor(decorated_compose(a, c), decorated_compose(b, d))
    assert decorated_equal(lhs, rhs)


def test_equality_sees_decorations():
    c = identity_cospan(2)
    assert not decorated_equal(decorate(c, ((0, 1),), G), decorate(c, ((0, 0),), G))
    swapped = Cospan(FinFunction(2, 2, [1, 0]), FinFunction(2, 2, [1, 0]))
    assert decorated_equal(decorate(c, ((0, 0),), G), decorate(swapped, ((1, 1),), G))


def test_equality_across_functors_is_false():
    other = GraphDecoration(FactSys.ALL_ISO)
    assert not decorated_equal(decorated_identity(1, G), decorated_identity(1, other))


def test_composition_needs_same_functor_and_feet():
    with pytest.raises(FunctorMismatch):
        decorated_compose(decorated_identity(1, G), decorated_identity(1, GraphDecoration(FactSys.ALL_ISO)))
    with pytest.raises(FootMismatch):
        decorated_compose(decorated_identity(1, G), decorated_identity(2, G))


def test_lift_drops_junk_under_epimono():
    c = Cospan(FinFunction(1, 3, [0]), FinFunction(1, 3, [0]))
    f = lift(c, G)
    assert f.apex.size == 1 and f.decoration == ()


def test_decorate_restricts_decoration_to_image():
    c = Cospan(FinFunction(1, 3, [0]), FinFunction(1, 3, [2]))
    f = decorate(c, ((0, 1), (0, 2)), G)
    assert f.apex.size == 2 and f.decoration == ((0, 1),)


@pytest.mark.parametrize("n", [0, 1, 2])
def test_frobenius_axioms_decorated(n):
    assert all(r.passed for r in check_frobenius(decorated_ops(G), [n]))


def test_braiding_lift():
    assert iso_equal(decorated_braiding(1, 2, G).corel.underlying, braiding(1, 2))


@given(graph_morphism(2, 1))
def test_identity_decdata(f):
    assert decorated_equal(apply_decdata_morphism(identity_decdata(G), f), f)


@given(graph_morphism(1, 2))
def test_decdata_composite_acts_sequentially(f):
    two = DecDataMorphism(G, G, scale_edges(2), "double")
    three = DecDataMorphism(G, G, scale_edges(3), "triple")
    both = apply_decdata_morphism(two.then(three), f)
    seq = apply_decdata_morphism(three, apply_decdata_morphism(two, f))
    assert decorated_equal(both, seq)
    assert len(both.decoration) == 6 * len(f.decoration)


@given(composable_graphs(2))
def test_decdata_morphism_preserves_composition(pair):
    f, g = pair
    phi = DecDataMorphism(G, G, scale_edges(2))
    lhs = apply_decdata_morphism(phi, decorated_compose(f, g))
    rhs = decorated_compose(apply_decdata_morphism(phi, f), apply_decdata_morphism(phi, g))
    assert decorated_equal(lhs, rhs)


def test_decdata_checks():
    cospans_only = GraphDecoration(FactSys.ALL_ISO)
    with pytest.raises(ValueError):
        DecDataMorphism(G, cospans_only, lambda N, s: s)
    phi = DecDataMorphism(cospans_only, G, lambda N, s: s)
    with pytest.raises(SourceMismatch):
        apply_decdata_morphism(phi, decorated_identity(1, G))
    with pytest.raises(SourceMismatch):
        phi.then(phi)
