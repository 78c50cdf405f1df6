"""Open reaction networks and their polynomial vector fields.

The decoration functor :class:`DynamFunctor` sends a finite set ``N`` to the
polynomial vector fields on ``R^N`` and a map ``f`` to ``v -> f_* . v . f^*``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from . import finset as fs
from .cospan import Cospan, FactSys
from .decor import DecoratedMorphism, DecorationFunctor, decorate
from .finset import FinFunction, FinSet
from .polynomial import Polynomial, to_fraction


class SpaceMismatch(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class PolyVectorField:
    space: FinSet
    components: tuple[Polynomial, ...]

    def __post_init__(self):
        n = self.space.size
        if len(self.components) != n:
            raise SpaceMismatch(f"{len(self.components)} components on a space of size {n}")
        for p in self.components:
            if p.nvars != n:
                raise SpaceMismatch(f"component in {p.nvars} variables on a space of size {n}")

    @classmethod
    def zero(cls, space: FinSet | int) -> PolyVectorField:
        space = fs.as_finset(space)
        return cls(space, tuple(Polynomial.zero(space.size) for _ in range(space.size)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyVectorField):
            return NotImplemented
        return self.space == other.space and self.components == other.components

    def __hash__(self) -> int:
        return hash(self.components)

    def __add__(self, other: PolyVectorField) -> PolyVectorField:
        if self.space != other.space:
            raise SpaceMismatch("adding fields on different spaces")
        return PolyVectorField(self.space, tuple(p + q for p, q in zip(self.components, other.components)))

    def __call__(self, c: Sequence):
        return [p.evaluate(c) for p in self.components]

    def degree(self) -> int:
        return max((p.degree() for p in self.components), default=0)

    def is_linear(self) -> bool:
        return self.degree() <= 1

    def format(self, names: Sequence[str] | None = None) -> str:
        names = list(names or self.space.names())
        return "\n".join(f"d{names[k]}/dt = {p.format(names)}" for k, p in enumerate(self.components))


def pullback_map(f: FinFunction) -> Callable[[Polynomial], Polynomial]:
    """Precomposition with ``f^*: R^Y -> R^X``, as a variable renaming."""
    table, n = f.table, f.cod.size

    def pull(p: Polynomial) -> Polynomial:
        if p.nvars != f.dom.size:
            raise SpaceMismatch(f"polynomial in {p.nvars} variables pulled along {f}")
        return p.rename(table, n)

    return pull


def pushforward_field(f: FinFunction, v: PolyVectorField) -> PolyVectorField:
    """``f_* . v . f^*``: rename variables along ``f`` and sum components over fibres."""
    if v.space != f.dom:
        raise SpaceMismatch(f"field on {v.space} pushed along a map out of {f.dom}")
    pull = pullback_map(f)
    comps = [Polynomial.zero(f.cod.size) for _ in range(f.cod.size)]
    for x, p in enumerate(v.components):
        y = f.table[x]
        comps[y] = comps[y] + pull(p)
    return PolyVectorField(f.cod, tuple(comps))


def block_sum(v: PolyVectorField, w: PolyVectorField) -> PolyVectorField:
    S, inl, inr = fs.coproduct(v.space, w.space)
    n = S.size
    comps = [p.rename(inl.table, n) for p in v.components]
    comps += [p.rename(inr.table, n) for p in w.components]
    return PolyVectorField(S, tuple(comps))


class DynamFunctor(DecorationFunctor):
    """Polynomial vector fields as decorating data over (all maps, isos)."""

    def __repr__(self) -> str:
        return "D"

    def system(self) -> FactSys:
        return FactSys.ALL_ISO

    def is_decoration(self, N: FinSet, v) -> bool:
        return isinstance(v, PolyVectorField) and v.space == N

    def push(self, f: FinFunction, v: PolyVectorField) -> PolyVectorField:
        return pushforward_field(f, v)

    def pull(self, m: FinFunction, v: PolyVectorField) -> PolyVectorField:
        return pushforward_field(fs.inverse(m), v)

    def laxator(self, N, v, M, w) -> PolyVectorField:
        return block_sum(v, w)

    def unit(self) -> PolyVectorField:
        return PolyVectorField.zero(0)


_D = DynamFunctor()


def D_instance() -> DynamFunctor:
    return _D


@dataclass(frozen=True)
class Reaction:
    name: str
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    rate: Fraction

    def __post_init__(self):
        object.__setattr__(self, "rate", to_fraction(self.rate))
        object.__setattr__(self, "inputs", tuple(int(k) for k in self.inputs))
        object.__setattr__(self, "outputs", tuple(int(k) for k in self.outputs))
        if self.rate <= 0:
            raise ValueError(f"reaction {self.name} has non-positive rate {self.rate}")
        if len(self.inputs) != len(self.outputs):
            raise ValueError(f"reaction {self.name}: stoichiometry vectors differ in length")
        if any(k < 0 for k in self.inputs + self.outputs):
            raise ValueError(f"reaction {self.name}: negative stoichiometry")

    def order(self) -> int:
        return sum(self.inputs)


@dataclass(frozen=True, eq=False)
class ReactionNetwork:
    species: FinSet
    reactions: tuple[Reaction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "reactions", tuple(self.reactions))
        for r in self.reactions:
            if len(r.inputs) != self.species.size:
                raise ValueError(f"reaction {r.name} does not match {self.species.size} species")


@dataclass(frozen=True, eq=False)
class OpenNetwork:
    network: ReactionNetwork
    inputs: FinFunction
    outputs: FinFunction

    def __post_init__(self):
        sp = self.network.species
        if self.inputs.cod != sp or self.outputs.cod != sp:
            raise ValueError("boundary legs must land in the species set")

    @property
    def cospan(self) -> Cospan:
        return Cospan(self.inputs, self.outputs)


def mass_action(net: ReactionNetwork) -> PolyVectorField:
    n = net.species.size
    comps = [Polynomial.zero(n) for _ in range(n)]
    for r in net.reactions:
        flux = Polynomial._raw(n, {tuple(r.inputs): r.rate})
        for k in range(n):
            net_change = r.outputs[k] - r.inputs[k]
            if net_change:
                comps[k] = comps[k] + flux * net_change
    return PolyVectorField(net.species, tuple(comps))


def open_network_to_morphism(onet: OpenNetwork) -> DecoratedMorphism:
    return decorate(onet.cospan, mass_action(onet.network), _D)


def _move_reaction(r: Reaction, f: FinFunction, name: str) -> Reaction:
    ins, outs = [0] * f.cod.size, [0] * f.cod.size
    for k, t in enumerate(f.table):
        ins[t] += r.inputs[k]
        outs[t] += r.outputs[k]
    return Reaction(name, tuple(ins), tuple(outs), r.rate)


def _merge_networks(a: ReactionNetwork, b: ReactionNetwork, ja: FinFunction, jb: FinFunction) -> ReactionNetwork:
    names = fs.coproduct(FinSet(len(a.reactions), [r.name for r in a.reactions]),
                         FinSet(len(b.reactions), [r.name for r in b.reactions]))[0].names()
    reactions = [_move_reaction(r, ja, names[k]) for k, r in enumerate(a.reactions)]
    off = len(a.reactions)
    reactions += [_move_reaction(r, jb, names[off + k]) for k, r in enumerate(b.reactions)]
    return ReactionNetwork(ja.cod, tuple(reactions))


def compose_networks(a: OpenNetwork, b: OpenNetwork) -> OpenNetwork:
    """Glue ``a``'s right boundary to ``b``'s left boundary, merging species by pushout."""
    if a.outputs.dom != b.inputs.dom:
        raise ValueError(f"right boundary of size {a.outputs.dom.size} "
                         f"vs left boundary of size {b.inputs.dom.size}")
    jN, jM = fs.pushout(a.outputs, b.inputs)
    net = _merge_networks(a.network, b.network, jN, jM)
    return OpenNetwork(net, fs.compose(a.inputs, jN), fs.compose(b.outputs, jM))


def tensor_networks(a: OpenNetwork, b: OpenNetwork) -> OpenNetwork:
    S, inl, inr = fs.coproduct(a.network.species, b.network.species)
    net = _merge_networks(a.network, b.network, inl, inr)
    ins = fs.tensor(a.inputs, b.inputs)
    outs = fs.tensor(a.outputs, b.outputs)
    ins = FinFunction(fs.coproduct(a.inputs.dom, b.inputs.dom)[0], S, ins.table)
    outs = FinFunction(fs.coproduct(a.outputs.dom, b.outputs.dom)[0], S, outs.table)
    return OpenNetwork(net, ins, outs)
