"""KO-theory of BT^m in the ``[I, J]^(s)`` generators.

``[I, J]^(s)`` is the realification of ``v^s x^I xbar^J``.  Elements are
kept as integer combinations of symbols in normal form (``I . J = 0`` and the
first nonzero index belongs to ``I``) plus a coefficient-ring part.  The
complexification map into the truncated KU model is the equality oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, NamedTuple

from .ku import KuElement, Truncation, _univariate

Vec = tuple[int, ...]

# ---------------------------------------------------------------------------
# coefficient ring  Z[e, alpha, beta, beta^-1] / (2e, e^3, e alpha, alpha^2 - 4 beta)

_KINDS = ("b", "ab", "e", "ee")
_KIND_DEGREE = {"b": 0, "ab": -4, "e": -1, "ee": -2}


def _token_degree(tok: tuple[str, int]) -> int:
    kind, t = tok
    return _KIND_DEGREE[kind] - 8 * t


def _token_mul(p: tuple[str, int], q: tuple[str, int]) -> tuple[int, tuple[str, int]] | None:
    """(multiplier, token) for p*q, or None when the product vanishes."""
    (k1, t1), (k2, t2) = sorted((p, q), key=lambda tok: _KINDS.index(tok[0]))
    t = t1 + t2
    if k1 == "b":
        return 1, (k2, t)
    if k1 == "ab":
        if k2 == "ab":
            return 4, ("b", t + 1)
        return None  # e * alpha = 0
    if k1 == "e" and k2 == "e":
        return 1, ("ee", t)
    return None  # e^3 = 0


@dataclass(frozen=True, eq=False)
class KoScalar:
    """Element of the coefficient ring KO^*.

    Basis tokens are ``(kind, t)`` with kind one of ``b`` (beta^t), ``ab``
    (alpha beta^t), ``e`` (e beta^t) and ``ee`` (e^2 beta^t); e-token
    coefficients live in Z/2.
    """

    terms: Mapping[tuple[str, int], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for (kind, t), c in self.terms.items():
            if kind not in _KINDS:
                raise ValueError(f"unknown coefficient token {kind!r}")
            c = int(c) % 2 if kind in ("e", "ee") else int(c)
            if c:
                clean[(kind, int(t))] = c
        object.__setattr__(self, "terms", clean)

    @classmethod
    def integer(cls, n: int) -> "KoScalar":
        return cls({("b", 0): n})

    @classmethod
    def token(cls, kind: str, t: int = 0, c: int = 1) -> "KoScalar":
        return cls({(kind, t): c})

    def degrees(self) -> set[int]:
        return {_token_degree(tok) for tok in self.terms}

    def is_zero(self) -> bool:
        return not self.terms

    def torsion_part(self) -> "KoScalar":
        return KoScalar({k: c for k, c in self.terms.items() if k[0] in ("e", "ee")})

    def free_part(self) -> "KoScalar":
        return KoScalar({k: c for k, c in self.terms.items() if k[0] in ("b", "ab")})

    def __add__(self, other: "KoScalar") -> "KoScalar":
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, 0) + c
        return KoScalar(out)

    def __neg__(self) -> "KoScalar":
        return KoScalar({k: -c for k, c in self.terms.items()})

    def __sub__(self, other: "KoScalar") -> "KoScalar":
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return KoScalar({k: other * c for k, c in self.terms.items()})
        out: dict[tuple[str, int], int] = {}
        for p, c1 in self.terms.items():
            for q, c2 in other.terms.items():
                r = _token_mul(p, q)
                if r is not None:
                    mult, tok = r
                    out[tok] = out.get(tok, 0) + mult * c1 * c2
        return KoScalar(out)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        return isinstance(other, KoScalar) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __repr__(self) -> str:
        return f"KoScalar({self.terms})"


ALPHA = KoScalar.token("ab")
BETA = KoScalar.token("b", 1)
E = KoScalar.token("e")


def r_of_v_power(s: int) -> KoScalar:
    """Realification of v^s: 0 for s odd, alpha beta^((s-2)/4), or 2 beta^(s/4)."""
    if s % 2:
        return KoScalar()
    if s % 4 == 2:
        return KoScalar.token("ab", (s - 2) // 4)
    return KoScalar.token("b", s // 4, 2)


# ---------------------------------------------------------------------------
# symbols


class G2Symbol(NamedTuple):
    I: Vec
    J: Vec
    s: int


def is_g2_normal(I: Vec, J: Vec) -> bool:
    if len(I) != len(J) or not (any(I) or any(J)):
        return False
    if any(i and j for i, j in zip(I, J)):
        return False
    for i, j in zip(I, J):
        if i or j:
            return j == 0
    return False


@lru_cache(maxsize=None)
def _expand_pair(i: int, j: int) -> tuple[tuple[int, int, int], ...]:
    """x^i xbar^j as a sum of pure powers, via x^i xbar^j = -x^(i-1) xbar^j
    - x^i xbar^(j-1).  Returns (i', j', coeff) with i' * j' = 0."""
    if not (i and j):
        return ((i, j, 1),)
    out: dict[tuple[int, int], int] = {}
    for a, b, c in _expand_pair(i - 1, j) + _expand_pair(i, j - 1):
        out[a, b] = out.get((a, b), 0) - c
    return tuple((a, b, c) for (a, b), c in out.items() if c)


def _normalize_terms(
    raw: Mapping[tuple[Vec, Vec], int], odd: bool
) -> tuple[dict[tuple[Vec, Vec], int], int]:
    """Normal form of a linear combination of symbols of one degree parity.

    Relation (B) touches one index at a time, so indices are cleared in
    order and equal keys merged after each pass; relation (A) then fixes the
    leading index.  Returns (normal symbols, multiple of the scalar r(v^s)).
    """
    cur = {key: c for key, c in raw.items() if c}
    if not cur:
        return {}, 0
    m = len(next(iter(cur))[0])
    for k in range(m):
        nxt: dict[tuple[Vec, Vec], int] = {}
        for (I, J), c in cur.items():
            if I[k] and J[k]:
                for a, b, e in _expand_pair(I[k], J[k]):
                    key = (I[:k] + (a,) + I[k + 1:], J[:k] + (b,) + J[k + 1:])
                    nxt[key] = nxt.get(key, 0) + c * e
            else:
                nxt[I, J] = nxt.get((I, J), 0) + c
        cur = {key: c for key, c in nxt.items() if c}
    out: dict[tuple[Vec, Vec], int] = {}
    scalar = 0
    for (P, Q), c in cur.items():
        for p, q in zip(P, Q):
            if p or q:
                if q:
                    P, Q, c = Q, P, (-c if odd else c)
                break
        else:
            scalar += c
            continue
        out[P, Q] = out.get((P, Q), 0) + c
    return {key: c for key, c in out.items() if c}, scalar


# ---------------------------------------------------------------------------
# elements


@dataclass(frozen=True, eq=False)
class KoElement:
    """Homogeneous element of KO^degree(BT^m).

    ``reduced`` maps normal-form symbols ``(I, J)`` to integer coefficients;
    every symbol carries ``s = -degree / 2``.
    """

    m: int
    degree: int
    scalar: KoScalar = field(default_factory=KoScalar)
    reduced: Mapping[tuple[Vec, Vec], int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for (I, J), c in self.reduced.items():
            if not c:
                continue
            I, J = tuple(I), tuple(J)
            if len(I) != self.m or len(J) != self.m:
                raise ValueError(f"symbol {I, J} does not have {self.m} entries")
            if not is_g2_normal(I, J):
                raise ValueError(f"symbol {I, J} is not in normal form")
            clean[(I, J)] = int(c)
        if clean and self.degree % 2:
            raise ValueError("reduced classes live in even degrees")
        bad = self.scalar.degrees() - {self.degree}
        if bad:
            raise ValueError(f"scalar part has degrees {sorted(bad)}, expected {self.degree}")
        object.__setattr__(self, "reduced", clean)

    @property
    def s(self) -> int:
        return -self.degree // 2

    @classmethod
    def zero(cls, m: int, degree: int = 0) -> "KoElement":
        return cls(m, degree)

    @classmethod
    def one(cls, m: int) -> "KoElement":
        return cls(m, 0, KoScalar.integer(1))

    @classmethod
    def from_scalar(cls, m: int, lam: KoScalar) -> "KoElement":
        degs = lam.degrees()
        if len(degs) > 1:
            raise ValueError("scalar is not homogeneous")
        return cls(m, degs.pop() if degs else 0, lam)

    @classmethod
    def symbol(cls, I: Iterable[int], J: Iterable[int], s: int) -> "KoElement":
        """[I, J]^(s), normalised."""
        return normalize_symbol(I, J, s)

    def symbols(self) -> list[G2Symbol]:
        return [G2Symbol(I, J, self.s) for I, J in self.reduced]

    def is_zero(self) -> bool:
        return not self.reduced and self.scalar.is_zero()

    def _check(self, other: "KoElement") -> None:
        if self.m != other.m:
            raise ValueError(f"elements over BT^{self.m} and BT^{other.m}")

    def __add__(self, other: "KoElement") -> "KoElement":
        self._check(other)
        if self.degree != other.degree:
            if other.is_zero():
                return self
            if self.is_zero():
                return other
            raise ValueError(f"cannot add degrees {self.degree} and {other.degree}")
        out = dict(self.reduced)
        for k, c in other.reduced.items():
            out[k] = out.get(k, 0) + c
        return KoElement(self.m, self.degree, self.scalar + other.scalar, out)

    def __neg__(self) -> "KoElement":
        return self.scale(-1)

    def __sub__(self, other: "KoElement") -> "KoElement":
        return self + (-other)

    def scale(self, k: int) -> "KoElement":
        return KoElement(
            self.m, self.degree, self.scalar * k, {key: k * c for key, c in self.reduced.items()}
        )

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if isinstance(other, KoScalar):
            return ko_module_action(other, self)
        return ko_mul(self, other)

    def __rmul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        if isinstance(other, KoScalar):
            return ko_module_action(other, self)
        return NotImplemented

    def __eq__(self, other: object) -> bool:
        """Symbolic equality of normal forms."""
        if not isinstance(other, KoElement):
            return NotImplemented
        if self.m != other.m:
            return False
        if self.is_zero() and other.is_zero():
            return True
        return (
            self.degree == other.degree
            and self.scalar == other.scalar
            and self.reduced == other.reduced
        )

    def __hash__(self) -> int:
        return hash((self.m, self.degree, self.scalar, frozenset(self.reduced.items())))

    def __str__(self) -> str:
        from .notation import render

        return render(self)

    def __repr__(self) -> str:
        return f"KoElement(m={self.m}, degree={self.degree}, {self})"


def normalize_symbol(I: Iterable[int], J: Iterable[int], s: int) -> KoElement:
    """Normal form of r(v^s x^I xbar^J).

    Relation (B) is applied at the smallest index with i_k j_k != 0 until
    ``I . J = 0``; then relation (A) swaps the pair, with sign (-1)^s, when
    the first nonzero index belongs to J.  The empty symbol is the scalar
    r(v^s).
    """
    I, J = tuple(int(i) for i in I), tuple(int(j) for j in J)
    if len(I) != len(J):
        raise ValueError("I and J must have the same length")
    if any(v < 0 for v in I + J):
        raise ValueError("exponents must be non-negative")
    out, mult = _normalize_terms({(I, J): 1}, bool(s % 2))
    return KoElement(len(I), -2 * s, r_of_v_power(s) * mult, out)


def realify(u: KuElement) -> KoElement:
    """Realification r: KU^{-2s} -> KO^{-2s} of a canonical element."""
    m = u.trunc.m
    zero = (0,) * m
    red = {(a, zero): c for a, c in u.coeffs.items() if any(a)}
    const = u.coeffs.get(zero, 0)
    return KoElement(m, -2 * u.s, r_of_v_power(u.s) * const, red)


def complexify(a: KoElement, trunc: Truncation) -> KuElement:
    """Complexification c: KO^{-2s}(BT^m) -> KU^{-2s}, truncated.

    c([I,J]^(s)) = v^s x^I xbar^J + (-1)^s v^s xbar^I x^J; on coefficients
    c(beta) = v^4, c(alpha) = 2 v^2, c(e) = 0.
    """
    if trunc.m != a.m:
        raise ValueError(f"truncation has {trunc.m} variables, element has {a.m}")
    if a.degree % 2:
        raise ValueError("KU vanishes in odd degrees; complexify the even part only")
    s = a.s
    out: dict[tuple[int, ...], int] = {}
    zero = (0,) * a.m
    for (kind, t), c in a.scalar.terms.items():
        if kind == "b":
            out[zero] = out.get(zero, 0) + c
        elif kind == "ab":
            out[zero] = out.get(zero, 0) + 2 * c
    sign = -1 if s % 2 else 1
    cur: dict[tuple[Vec, Vec], int] = {}
    for (I, J), c in a.reduced.items():
        cur[I, J] = cur.get((I, J), 0) + c
        cur[J, I] = cur.get((J, I), 0) + sign * c
    # expand x^i xbar^j one variable at a time, merging as we go
    for k, dk in enumerate(trunc.d):
        nxt: dict[tuple[Vec, Vec], int] = {}
        for (I, J), c in cur.items():
            for e, u in enumerate(_univariate(I[k], J[k], dk)):
                if u:
                    key = (I[:k] + (e,) + I[k + 1:], J[:k] + (0,) + J[k + 1:])
                    nxt[key] = nxt.get(key, 0) + c * u
        cur = {key: c for key, c in nxt.items() if c}
    for (I, _), c in cur.items():
        out[I] = out.get(I, 0) + c
    return KuElement(trunc, s, out)


def ko_module_action(lam: KoScalar, a: KoElement) -> KoElement:
    """KO^*-module action: beta shifts s by 4, alpha doubles and shifts by 2,
    e kills reduced classes."""
    degs = lam.degrees()
    if len(degs) > 1:
        raise ValueError("scalar is not homogeneous")
    if not degs:
        return KoElement.zero(a.m, a.degree)
    degree = a.degree + degs.pop()
    out: dict[tuple[Vec, Vec], int] = {}
    for (kind, t), c in lam.terms.items():
        if kind == "b":
            mult = c
        elif kind == "ab":
            mult = 2 * c
        else:
            continue
        for key, k in a.reduced.items():
            out[key] = out.get(key, 0) + mult * k
    if out and degree % 2:
        raise AssertionError("unreachable: free tokens have even degree")
    return KoElement(a.m, degree, lam * a.scalar, out)


def ko_mul(a: KoElement, b: KoElement) -> KoElement:
    """Product in KO^*(BT^m) via [I,J]^(s)[H,K]^(t) = [I+H,J+K]^(s+t)
    + (-1)^s [J+H,I+K]^(s+t)."""
    a._check(b)
    degree = a.degree + b.degree
    result = KoElement(a.m, degree, a.scalar * b.scalar)
    if a.reduced and not b.scalar.is_zero():
        result = result + ko_module_action(b.scalar, KoElement(a.m, a.degree, reduced=a.reduced))
    if b.reduced and not a.scalar.is_zero():
        result = result + ko_module_action(a.scalar, KoElement(b.m, b.degree, reduced=b.reduced))
    if a.reduced and b.reduced:
        s, t = a.s, b.s
        sign = -1 if s % 2 else 1
        # collect raw symbols first; many pairs share the same sum
        raw: dict[tuple[Vec, Vec], int] = {}
        for (I, J), c1 in a.reduced.items():
            for (H, K), c2 in b.reduced.items():
                c = c1 * c2
                IH = tuple(p + q for p, q in zip(I, H))
                JK = tuple(p + q for p, q in zip(J, K))
                JH = tuple(p + q for p, q in zip(J, H))
                IK = tuple(p + q for p, q in zip(I, K))
                raw[IH, JK] = raw.get((IH, JK), 0) + c
                raw[JH, IK] = raw.get((JH, IK), 0) + sign * c
        out, mult = _normalize_terms(raw, bool((s + t) % 2))
        result = result + KoElement(a.m, degree, r_of_v_power(s + t) * mult, out)
    return result


def gamma_shift(a: KoElement, j: int = 1) -> KoElement:
    """Action of gamma^j: [I,J]^(s) -> [I,J]^(s+2j).  gamma is not an element
    of KO^*, so ``a`` must have no coefficient-ring part."""
    if not a.scalar.is_zero():
        raise ValueError("gamma acts only on reduced classes")
    return KoElement(a.m, a.degree - 4 * j, reduced=a.reduced)


def ko_equal(a: KoElement, b: KoElement, trunc: Truncation | None = None) -> bool:
    """Equality in KO^*(BT^m).

    Without ``trunc`` normal forms are compared directly (finite sums of
    normal symbols are independent).  With ``trunc`` both sides are
    complexified into the truncated model; e-torsion, which complexification
    kills, is compared directly.
    """
    a._check(b)
    if a.degree != b.degree and not (a.is_zero() or b.is_zero()):
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")
    if trunc is None:
        return a == b
    diff = a - b
    if not diff.scalar.torsion_part().is_zero():
        return False
    if diff.degree % 2:
        return True
    return complexify(diff, trunc).is_zero()


# ---------------------------------------------------------------------------
# first generating set  X_S^(s)


def _indicator(S: Iterable[int], m: int) -> Vec:
    S = set(S)
    if any(i < 1 or i > m for i in S):
        raise ValueError(f"vertex set {sorted(S)} not inside 1..{m}")
    return tuple(1 if i + 1 in S else 0 for i in range(m))


def g1_class(S: Iterable[int], s: int, m: int) -> KoElement:
    """X_S^(s) = r(v^s prod_{i in S} x_i); X_empty^(s) = r(v^s)."""
    eps = _indicator(S, m)
    zero = (0,) * m
    if not any(eps):
        return KoElement(m, -2 * s, r_of_v_power(s))
    return KoElement(m, -2 * s, reduced={(eps, zero): 1})


def _x(S: Iterable[int], u: int, m: int) -> KoElement:
    """X_S^(u) for u in {0, 1, 2}, with X_S^(2) = gamma X_S."""
    S = tuple(S)
    if u == 2:
        if not S:
            return KoElement(m, -4, ALPHA)  # gamma X_empty = 2 gamma = alpha
        return gamma_shift(g1_class(S, 0, m), 1)
    return g1_class(S, u, m)


def _prod(factors: Iterable[KoElement], m: int) -> KoElement:
    out = KoElement.one(m)
    for f in factors:
        out = ko_mul(out, f)
    return out


def _subsets(S: Iterable[int]) -> list[tuple[int, ...]]:
    S = sorted(S)
    return [c for k in range(len(S) + 1) for c in combinations(S, k)]


def relation_I_sides(
    A: Iterable[int], B: Iterable[int], C: Iterable[int], s: int, t: int, m: int
) -> tuple[KoElement, KoElement]:
    """Both sides of relation (I) for disjoint A, B, C and s, t in {0, 1}."""
    A, B, C = set(A), set(B), set(C)
    if A & B or A & C or B & C:
        raise ValueError("A, B, C must be pairwise disjoint")
    if s not in (0, 1) or t not in (0, 1):
        raise ValueError("s and t must be 0 or 1")
    lhs = ko_mul(_x(A | B, s, m), _x(A | C, t, m))
    u = s + t
    first = KoElement.zero(m, -2 * u)
    for T in _subsets(A):
        first = first + _x(set(T) | B | C, u, m)
    second = KoElement.zero(m, -2 * u)
    for S in _subsets(B):
        term = ko_mul(_prod((g1_class({i}, 0, m) for i in S), m), _x(C | (B - set(S)), u, m))
        second = second + term.scale((-1) ** len(S))
    inner = first + second.scale((-1) ** (s + len(A | B)))
    rhs = ko_mul(_prod((g1_class({i}, 0, m) for i in sorted(A)), m), inner)
    return lhs, rhs


def relation_II_sides(i: int, S: Iterable[int], s: int, m: int) -> tuple[KoElement, KoElement]:
    """Both sides of relation (II) for i < min(S), |S| > 1, s in {0, 1}."""
    S = set(S)
    if len(S) < 2 or i >= min(S):
        raise ValueError("relation (II) needs |S| > 1 and i < min(S)")
    if s not in (0, 1):
        raise ValueError("s must be 0 or 1")
    lhs = ko_mul(g1_class({i}, 0, m), g1_class(S, s, m))
    total = KoElement.zero(m, -2 * s)
    for T in _subsets(S):
        rest = _prod((g1_class({j}, 0, m) for j in sorted(S - set(T))), m)
        total = total + ko_mul(rest, g1_class({i} | set(T), s, m)).scale((-1) ** len(T))
    rhs = total.scale((-1) ** s) + g1_class({i} | S, s, m)
    return lhs, rhs
