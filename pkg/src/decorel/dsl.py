"""A line-oriented language for open reaction networks.

::

    # the decay of a single species
    network decay
      species A
      reaction d: A -> 0 rate 1
      inputs x->A
      outputs y->A
    end

    compose main = decay ; decay | decay

``|`` binds tighter than ``;`` and both associate to the left; parentheses
group. Rates are exact rationals (``3/2``, ``0.25``). Sequential composition
requires the right boundary labels of the left operand to equal the left
boundary labels of the right operand, in order.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction

from .dynam import OpenNetwork, Reaction, ReactionNetwork, compose_networks, tensor_networks
from .finset import FinFunction, FinSet

KEYWORDS = {"network", "species", "reaction", "inputs", "outputs", "end", "compose", "rate"}

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<arrow>->)
  | (?P<num>\d+(?:\.\d*)?(?:[eE][-+]?\d+)?(?:/\d+)?)
  | (?P<name>[A-Za-z_][A-Za-z0-9_']*)
  | (?P<sym>[:+;|=()])
""", re.VERBOSE)


class DslError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)
        self.line = line
        self.column = column


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    line: int
    column: int


def tokenize(line: str, lineno: int) -> list[Token]:
    line = line.split("#", 1)[0]
    out = []
    pos = 0
    while pos < len(line):
        m = _TOKEN.match(line, pos)
        if not m:
            raise DslError(f"unexpected character {line[pos]!r}", lineno, pos + 1)
        if m.lastgroup != "ws":
            out.append(Token(m.lastgroup, m.group(), lineno, pos + 1))
        pos = m.end()
    return out


class _Cursor:
    def __init__(self, tokens: list[Token], lineno: int, length: int):
        self.tokens = tokens
        self.i = 0
        self.lineno = lineno
        self.length = length

    def peek(self) -> Token | None:
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def error(self, message: str, tok: Token | None = None):
        tok = tok or self.peek()
        col = tok.column if tok else self.length + 1
        found = f" at {tok.text!r}" if tok else " at end of line"
        raise DslError(message + found, self.lineno, col)

    def take(self, kind: str | None = None, text: str | None = None, what: str = "") -> Token:
        tok = self.peek()
        if tok is None or (kind and tok.kind != kind) or (text and tok.text != text):
            self.error(f"expected {what or text or kind}")
        self.i += 1
        return tok

    def name(self, what: str) -> Token:
        tok = self.take("name", what=what)
        if tok.text in KEYWORDS:
            self.error(f"expected {what}, found keyword", tok)
        return tok

    def done(self) -> bool:
        return self.i >= len(self.tokens)

    def finish(self):
        if not self.done():
            self.error("unexpected token")


@dataclass(frozen=True)
class Ref:
    name: str


@dataclass(frozen=True)
class Seq:
    left: object
    right: object


@dataclass(frozen=True)
class Par:
    left: object
    right: object


def format_expr(e) -> str:
    if isinstance(e, Ref):
        return e.name
    if isinstance(e, Par):
        right = format_expr(e.right)
        if not isinstance(e.right, Ref):
            right = f"({right})"
        left = format_expr(e.left)
        if isinstance(e.left, Seq):
            left = f"({left})"
        return f"{left} | {right}"
    right = format_expr(e.right)
    if isinstance(e.right, Seq):
        right = f"({right})"
    return f"{format_expr(e.left)} ; {right}"


@dataclass
class NetworkDocument:
    networks: dict[str, OpenNetwork] = field(default_factory=dict)
    compositions: dict[str, object] = field(default_factory=dict)

    def names(self) -> list[str]:
        return list(self.networks) + list(self.compositions)

    def evaluate(self, name: str) -> OpenNetwork:
        if name in self.networks:
            return self.networks[name]
        if name in self.compositions:
            return evaluate_expr(self, self.compositions[name])
        raise KeyError(f"no network or composition named {name!r}")

    def _key(self):
        return ({k: network_key(v) for k, v in self.networks.items()}, dict(self.compositions))

    def __eq__(self, other) -> bool:
        if not isinstance(other, NetworkDocument):
            return NotImplemented
        return (list(self.networks) == list(other.networks)
                and list(self.compositions) == list(other.compositions)
                and self._key() == other._key())


def network_key(n: OpenNetwork) -> tuple:
    net = n.network
    return (net.species.names(),
            tuple((r.name, r.inputs, r.outputs, r.rate) for r in net.reactions),
            n.inputs.dom.names(), n.inputs.table, n.outputs.dom.names(), n.outputs.table)


def evaluate_expr(doc: NetworkDocument, e, token: Token | None = None) -> OpenNetwork:
    line, col = (token.line, token.column) if token else (0, 0)
    if isinstance(e, Ref):
        try:
            return doc.evaluate(e.name)
        except KeyError:
            raise DslError(f"unknown network {e.name!r}", line, col) from None
    a = evaluate_expr(doc, e.left, token)
    b = evaluate_expr(doc, e.right, token)
    if isinstance(e, Par):
        return tensor_networks(a, b)
    if a.outputs.dom.names() != b.inputs.dom.names():
        raise DslError(f"boundary mismatch: outputs {list(a.outputs.dom.names())} "
                       f"vs inputs {list(b.inputs.dom.names())}", line, col)
    return compose_networks(a, b)


def _parse_side(cur: _Cursor, species: FinSet, stop: set[str]) -> list[int]:
    counts = [0] * species.size
    tok = cur.peek()
    if tok is not None and tok.kind == "num" and tok.text == "0":
        cur.i += 1
        nxt = cur.peek()
        if nxt is None or nxt.text in stop:
            return counts
        cur.error("a bare 0 stands for the empty side", tok)
    while True:
        coef = 1
        tok = cur.peek()
        if tok is not None and tok.kind == "num":
            if not re.fullmatch(r"\d+", tok.text) or int(tok.text) == 0:
                cur.error("stoichiometric coefficient must be a positive integer", tok)
            coef = int(tok.text)
            cur.i += 1
        sp = cur.name("species name")
        try:
            k = species.index(sp.text)
        except KeyError:
            raise DslError(f"unknown species {sp.text!r}", sp.line, sp.column) from None
        counts[k] += coef
        nxt = cur.peek()
        if nxt is not None and nxt.text == "+":
            cur.i += 1
            continue
        return counts


def _parse_rate(cur: _Cursor) -> Fraction:
    tok = cur.take("num", what="rate")
    try:
        rate = Fraction(tok.text)
    except (ValueError, ZeroDivisionError):
        cur.error("malformed rate", tok)
    if rate <= 0:
        cur.error("rate must be positive", tok)
    return rate


def _parse_boundary(cur: _Cursor, species: FinSet) -> tuple[list[str], list[int]]:
    labels, table = [], []
    while not cur.done():
        lab = cur.name("boundary label")
        cur.take("arrow", what="'->'")
        sp = cur.name("species name")
        if lab.text in labels:
            cur.error("duplicate boundary label", lab)
        try:
            table.append(species.index(sp.text))
        except KeyError:
            raise DslError(f"unknown species {sp.text!r}", sp.line, sp.column) from None
        labels.append(lab.text)
    return labels, table


def _parse_expr(cur: _Cursor):
    def atom():
        tok = cur.peek()
        if tok is not None and tok.text == "(":
            cur.i += 1
            e = seq()
            cur.take("sym", ")", "')'")
            return e
        return Ref(cur.name("network name").text)

    def par():
        e = atom()
        while (tok := cur.peek()) is not None and tok.text == "|":
            cur.i += 1
            e = Par(e, atom())
        return e

    def seq():
        e = par()
        while (tok := cur.peek()) is not None and tok.text == ";":
            cur.i += 1
            e = Seq(e, par())
        return e

    return seq()


class _NetworkBuilder:
    def __init__(self, name: Token):
        self.name = name
        self.species: list[str] = []
        self.reactions: list[Reaction] = []
        self.inputs: tuple[list[str], list[int]] | None = None
        self.outputs: tuple[list[str], list[int]] | None = None

    def species_set(self) -> FinSet:
        return FinSet(len(self.species), self.species)

    def build(self) -> OpenNetwork:
        sp = self.species_set()
        net = ReactionNetwork(sp, tuple(self.reactions))
        ins = self.inputs or ([], [])
        outs = self.outputs or ([], [])
        return OpenNetwork(net, FinFunction(FinSet(len(ins[0]), ins[0]), sp, ins[1]),
                           FinFunction(FinSet(len(outs[0]), outs[0]), sp, outs[1]))


def parse(text: str) -> NetworkDocument:
    doc = NetworkDocument()
    current: _NetworkBuilder | None = None
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        tokens = tokenize(raw, lineno)
        if not tokens:
            continue
        cur = _Cursor(tokens, lineno, len(raw.split("#", 1)[0]))
        head = cur.take("name", what="a keyword")
        kw = head.text
        if current is None:
            if kw == "network":
                name = cur.name("network name")
                cur.finish()
                if name.text in doc.networks or name.text in doc.compositions:
                    cur.error("duplicate name", name)
                current = _NetworkBuilder(name)
            elif kw == "compose":
                name = cur.name("composition name")
                cur.take("sym", "=", "'='")
                expr = _parse_expr(cur)
                cur.finish()
                if name.text in doc.networks or name.text in doc.compositions:
                    cur.error("duplicate name", name)
                evaluate_expr(doc, expr, head)
                doc.compositions[name.text] = expr
            else:
                cur.error("expected 'network' or 'compose'", head)
            continue
        if kw == "species":
            while not cur.done():
                sp = cur.name("species name")
                if sp.text in current.species:
                    cur.error("duplicate species", sp)
                current.species.append(sp.text)
        elif kw == "reaction":
            rname = cur.name("reaction name")
            if any(r.name == rname.text for r in current.reactions):
                cur.error("duplicate reaction", rname)
            cur.take("sym", ":", "':'")
            sp = current.species_set()
            ins = _parse_side(cur, sp, {"->"})
            cur.take("arrow", what="'->'")
            outs = _parse_side(cur, sp, {"rate"})
            cur.take("name", "rate", "'rate'")
            rate = _parse_rate(cur)
            cur.finish()
            current.reactions.append(Reaction(rname.text, tuple(ins), tuple(outs), rate))
        elif kw in ("inputs", "outputs"):
            if getattr(current, kw) is not None:
                cur.error(f"repeated {kw}", head)
            setattr(current, kw, _parse_boundary(cur, current.species_set()))
        elif kw == "end":
            cur.finish()
            doc.networks[current.name.text] = current.build()
            current = None
        else:
            cur.error("expected 'species', 'reaction', 'inputs', 'outputs' or 'end'", head)
    if current is not None:
        raise DslError(f"network {current.name.text!r} is missing 'end'", len(lines) + 1, 1)
    return doc


def _format_side(counts, names) -> str:
    terms = []
    for k, n in enumerate(counts):
        if n:
            terms.append(names[k] if n == 1 else f"{n} {names[k]}")
    return " + ".join(terms) or "0"


def format_network(name: str, n: OpenNetwork) -> str:
    names = n.network.species.names()
    lines = [f"network {name}"]
    if names:
        lines.append("  species " + " ".join(names))
    for r in n.network.reactions:
        lines.append(f"  reaction {r.name}: {_format_side(r.inputs, names)} -> "
                     f"{_format_side(r.outputs, names)} rate {r.rate}")
    for kw, leg in (("inputs", n.inputs), ("outputs", n.outputs)):
        pairs = " ".join(f"{lab}->{names[t]}" for lab, t in zip(leg.dom.names(), leg.table))
        lines.append(f"  {kw} {pairs}".rstrip())
    lines.append("end")
    return "\n".join(lines)


def pretty(doc: NetworkDocument) -> str:
    blocks = [format_network(k, v) for k, v in doc.networks.items()]
    blocks += [f"compose {k} = {format_expr(e)}" for k, e in doc.compositions.items()]
    return "\n\n".join(blocks) + ("\n" if blocks else "")
