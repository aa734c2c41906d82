"""Text form of KO elements.

Grammar (whitespace ignored)::

    expr    := ['-'] term (('+' | '-') term)*
    term    := [int ['*']] factor (['*'] factor)*  |  int
    factor  := symbol | xclass | 'alpha' | 'beta' ['^' int] | 'e' ['^2']
             | 'gamma' ['^' int]
    symbol  := '[' '(' ints ')' ',' '(' ints ')' ']' [sup]
    xclass  := 'X' ['_' (digit | '{' set '}')] [sup]
    sup     := '^' (int | '(' int ')' | '{' int '}' | '{(' int ')}')

``X_{S}`` sets are written ``X_{1,2}`` or ``X_{{1,2}}``; ``X_{}`` is the
empty set.  Unicode ``α β γ`` are accepted.  Factors in a term are
multiplied in KO^*(BT^m); ``gamma^j`` shifts the product of the other
factors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .ko import (
    KoElement,
    KoScalar,
    g1_class,
    gamma_shift,
    ko_mul,
    normalize_symbol,
)

__all__ = ["ParseError", "parse", "render", "render_symbol"]


class ParseError(ValueError):
    pass


# ---------------------------------------------------------------------------
# rendering


def _vec(v) -> str:
    return "(" + ",".join(map(str, v)) + ")"


def render_symbol(I, J, s: int) -> str:
    return f"[{_vec(I)},{_vec(J)}]^{s}"


def _render_token(kind: str, t: int) -> str:
    base = {"b": "", "ab": "alpha", "e": "e", "ee": "e^2"}[kind]
    if t:
        beta = "beta" if t == 1 else f"beta^{t}"
        return f"{base}*{beta}" if base else beta
    return base


def _sort_key(key):
    I, J = key
    return (sum(I) + sum(J), tuple(-i for i in I), J)


def render(a: KoElement) -> str:
    """Render in bracket notation, scalars first, deterministic order."""
    parts: list[tuple[int, str]] = []
    for (kind, t), c in sorted(a.scalar.terms.items()):
        tok = _render_token(kind, t)
        if not tok:
            parts.append((c, str(abs(c))))
        else:
            parts.append((c, tok if abs(c) == 1 else f"{abs(c)}*{tok}"))
    s = a.s
    for key in sorted(a.reduced, key=_sort_key):
        c = a.reduced[key]
        sym = render_symbol(key[0], key[1], s)
        parts.append((c, sym if abs(c) == 1 else f"{abs(c)}{sym}"))
    if not parts:
        return "0"
    out = ("-" if parts[0][0] < 0 else "") + parts[0][1]
    for c, text in parts[1:]:
        out += (" - " if c < 0 else " + ") + text
    return out


# ---------------------------------------------------------------------------
# parsing

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<name>alpha|beta|gamma|α|β|γ|e|X)
  | (?P<punct>[\[\](){},+\-*^_])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> list[str]:
    pos, out = 0, []
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if mt is None:
            raise ParseError(f"unexpected character {text[pos]!r} at {pos}")
        pos = mt.end()
        if mt.lastgroup != "ws":
            out.append(mt.group())
    return out


@dataclass
class _Factor:
    kind: str  # sym | x | scalar | gamma
    I: tuple = ()
    J: tuple = ()
    S: tuple = ()
    s: int = 0
    scalar: KoScalar | None = None


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self, k: int = 0):
        j = self.i + k
        return self.toks[j] if j < len(self.toks) else None

    def take(self, expected: str | None = None) -> str:
        tok = self.peek()
        if tok is None:
            raise ParseError("unexpected end of input")
        if expected is not None and tok != expected:
            raise ParseError(f"expected {expected!r}, got {tok!r}")
        self.i += 1
        return tok

    def int_(self, signed: bool = False) -> int:
        sign = 1
        if signed and self.peek() == "-":
            self.take()
            sign = -1
        tok = self.take()
        if not tok.isdigit():
            raise ParseError(f"expected integer, got {tok!r}")
        return sign * int(tok)

    def ints(self, close: str) -> tuple[int, ...]:
        vals = []
        while self.peek() != close:
            vals.append(self.int_())
            if self.peek() == ",":
                self.take()
        self.take(close)
        return tuple(vals)

    def sup(self) -> int:
        self.take("^")
        if self.peek() == "(":
            self.take()
            v = self.int_(signed=True)
            self.take(")")
            return v
        if self.peek() == "{":
            self.take()
            if self.peek() == "(":
                self.take()
                v = self.int_(signed=True)
                self.take(")")
            else:
                v = self.int_(signed=True)
            self.take("}")
            return v
        return self.int_(signed=True)

    def expr(self) -> list[tuple[int, list[_Factor]]]:
        terms = []
        sign = 1
        if self.peek() == "-":
            self.take()
            sign = -1
        elif self.peek() == "+":
            self.take()
        terms.append(self.term(sign))
        while self.peek() in ("+", "-"):
            sign = 1 if self.take() == "+" else -1
            terms.append(self.term(sign))
        if self.peek() is not None:
            raise ParseError(f"trailing input at {self.peek()!r}")
        return terms

    def term(self, sign: int) -> tuple[int, list[_Factor]]:
        coeff = sign
        factors: list[_Factor] = []
        has_int = self.peek() is not None and self.peek().isdigit()
        if has_int:
            coeff *= self.int_()
        while True:
            if self.peek() == "*":
                self.take()
            tok = self.peek()
            if tok in ("[", "X", "alpha", "α", "beta", "β", "gamma", "γ", "e"):
                factors.append(self.factor())
            else:
                break
        if not has_int and not factors:
            raise ParseError(f"expected a term, got {self.peek()!r}")
        return coeff, factors

    def factor(self) -> _Factor:
        tok = self.take()
        if tok == "[":
            self.take("(")
            I = self.ints(")")
            self.take(",")
            self.take("(")
            J = self.ints(")")
            self.take("]")
            s = self.sup() if self.peek() == "^" else 0
            if len(I) != len(J):
                raise ParseError(f"[{I},{J}] has vectors of different lengths")
            return _Factor("sym", I=I, J=J, s=s)
        if tok == "X":
            S: tuple[int, ...] = ()
            if self.peek() == "_":
                self.take()
                if self.peek() == "{":
                    self.take()
                    if self.peek() == "{":
                        self.take()
                        S = self.ints("}")
                        self.take("}")
                    else:
                        S = self.ints("}")
                else:
                    S = (self.int_(),)
            s = self.sup() if self.peek() == "^" else 0
            return _Factor("x", S=S, s=s)
        if tok in ("alpha", "α"):
            return _Factor("scalar", scalar=KoScalar.token("ab"))
        if tok in ("beta", "β"):
            t = self.sup() if self.peek() == "^" else 1
            return _Factor("scalar", scalar=KoScalar.token("b", t))
        if tok == "e":
            if self.peek() == "^":
                p = self.sup()
                if p == 1:
                    return _Factor("scalar", scalar=KoScalar.token("e"))
                if p == 2:
                    return _Factor("scalar", scalar=KoScalar.token("ee"))
                return _Factor("scalar", scalar=KoScalar())  # e^3 = 0
            return _Factor("scalar", scalar=KoScalar.token("e"))
        if tok in ("gamma", "γ"):
            j = self.sup() if self.peek() == "^" else 1
            return _Factor("gamma", s=j)
        raise ParseError(f"unexpected token {tok!r}")


def _infer_m(terms) -> int | None:
    m = None
    for _, factors in terms:
        for f in factors:
            if f.kind == "sym":
                if m is not None and m != len(f.I):
                    raise ParseError("symbols with different numbers of variables")
                m = len(f.I)
    if m is None:
        idx = [i for _, fs in terms for f in fs if f.kind == "x" for i in f.S]
        m = max(idx) if idx else None
    return m


def parse(text: str, m: int | None = None) -> KoElement:
    """Parse an element; ``m`` is inferred from bracket vectors or X indices
    when not given."""
    terms = _Parser(text).expr()
    inferred = _infer_m(terms)
    if m is None:
        m = inferred if inferred is not None else 1
    elif inferred is not None and any(f.kind == "sym" for _, fs in terms for f in fs) and inferred != m:
        raise ParseError(f"symbols have {inferred} entries but m = {m}")
    total: KoElement | None = None
    for coeff, factors in terms:
        value = KoElement.one(m)
        shift = 0
        for f in factors:
            if f.kind == "gamma":
                shift += f.s
                continue
            if f.kind == "sym":
                if len(f.I) != m:
                    raise ParseError(f"symbol has {len(f.I)} entries, expected {m}")
                piece = normalize_symbol(f.I, f.J, f.s)
            elif f.kind == "x":
                try:
                    piece = g1_class(f.S, f.s, m)
                except ValueError as exc:
                    raise ParseError(str(exc)) from exc
            else:
                piece = KoElement.from_scalar(m, f.scalar)
            value = ko_mul(value, piece)
        if shift:
            try:
                value = gamma_shift(value, shift)
            except ValueError as exc:
                raise ParseError(f"gamma applied to a coefficient-ring part: {exc}") from exc
        value = value.scale(coeff)
        try:
            total = value if total is None else total + value
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    assert total is not None
    return total
