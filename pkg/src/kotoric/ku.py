"""Truncated KU-theory of a product of even complex projective spaces.

An element of ``KU^{-2s}(CP^{d_1} x ... x CP^{d_m})`` is ``v^s`` times an
integer polynomial in ``x_1..x_m`` with ``x_i^{d_i+1} = 0``.  Conjugates
``xbar_i = -x_i/(1+x_i)`` are expanded on construction, so every stored
element is already in canonical form and equality is coefficient equality.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from math import comb
from typing import Iterable, Mapping

import numpy as np

Exponent = tuple[int, ...]

_INT64_SAFE = 1 << 62
_DENSE_LIMIT = 1 << 18


@dataclass(frozen=True)
class Truncation:
    """Per-variable nilpotency bounds: ``x_i^(d_i + 1) = 0``."""

    d: tuple[int, ...]

    def __post_init__(self) -> None:
        d = tuple(int(k) for k in self.d)
        object.__setattr__(self, "d", d)
        for k in d:
            if k < 2 or k % 2:
                raise ValueError(f"truncation degrees must be even and >= 2, got {d}")

    @classmethod
    def uniform(cls, m: int, d: int = 6) -> "Truncation":
        return cls((d,) * m)

    @property
    def m(self) -> int:
        return len(self.d)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(k + 1 for k in self.d)

    def __str__(self) -> str:
        return ",".join(map(str, self.d))


@lru_cache(maxsize=None)
def _univariate(i: int, j: int, d: int) -> tuple[int, ...]:
    """Coefficients of x^i * xbar^j truncated at degree d.

    xbar^j = (-1)^j x^j (1+x)^(-j) = sum_k (-1)^(j+k) C(j+k-1, k) x^(j+k).
    """
    out = [0] * (d + 1)
    if j == 0:
        if i <= d:
            out[i] = 1
        return tuple(out)
    for k in range(0, d + 1 - i - j):
        out[i + j + k] = (-1) ** (j + k) * comb(j + k - 1, k)
    return tuple(out)


def _outer(factors: list[tuple[int, ...]]) -> dict[Exponent, int]:
    terms: dict[Exponent, int] = {(): 1}
    for f in factors:
        nz = [(k, c) for k, c in enumerate(f) if c]
        terms = {e + (k,): v * c for e, v in terms.items() for k, c in nz}
    return terms


@dataclass(frozen=True, eq=False)
class KuElement:
    """Homogeneous element ``v^s * sum coeffs[a] x^a`` of the truncated ring."""

    trunc: Truncation
    s: int
    coeffs: Mapping[Exponent, int] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean = {}
        for a, c in self.coeffs.items():
            if not c:
                continue
            a = tuple(a)
            if len(a) != self.trunc.m or any(e < 0 or e > k for e, k in zip(a, self.trunc.d)):
                raise ValueError(f"exponent {a} outside truncation {self.trunc.d}")
            clean[a] = int(c)
        object.__setattr__(self, "coeffs", clean)

    # construction -----------------------------------------------------
    @classmethod
    def zero(cls, trunc: Truncation, s: int = 0) -> "KuElement":
        return cls(trunc, s, {})

    @classmethod
    def one(cls, trunc: Truncation, s: int = 0) -> "KuElement":
        return cls(trunc, s, {(0,) * trunc.m: 1})

    @classmethod
    def x(cls, trunc: Truncation, i: int, s: int = 0) -> "KuElement":
        """The generator x_i (1-based)."""
        a = [0] * trunc.m
        a[i - 1] = 1
        return cls(trunc, s, {tuple(a): 1})

    # arithmetic --------------------------------------------------------
    def _check(self, other: "KuElement") -> None:
        if self.trunc != other.trunc:
            raise ValueError(f"truncation mismatch: {self.trunc.d} vs {other.trunc.d}")

    def __add__(self, other: "KuElement") -> "KuElement":
        self._check(other)
        if self.s != other.s and self.coeffs and other.coeffs:
            raise ValueError(f"cannot add KU^{-2 * self.s} and KU^{-2 * other.s}")
        s = self.s if self.coeffs else other.s
        out = dict(self.coeffs)
        for a, c in other.coeffs.items():
            out[a] = out.get(a, 0) + c
        return KuElement(self.trunc, s, out)

    def __neg__(self) -> "KuElement":
        return KuElement(self.trunc, self.s, {a: -c for a, c in self.coeffs.items()})

    def __sub__(self, other: "KuElement") -> "KuElement":
        return self + (-other)

    def scale(self, k: int) -> "KuElement":
        return KuElement(self.trunc, self.s, {a: k * c for a, c in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return ku_mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, KuElement):
            return NotImplemented
        if self.trunc != other.trunc or self.coeffs != other.coeffs:
            return False
        return self.s == other.s or not self.coeffs

    def __hash__(self) -> int:
        return hash((self.trunc, self.s if self.coeffs else None, frozenset(self.coeffs.items())))

    def is_zero(self) -> bool:
        return not self.coeffs

    def total_degree(self) -> int:
        return max((sum(a) for a in self.coeffs), default=-1)

    def __repr__(self) -> str:
        return f"KuElement(s={self.s}, {self})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for a in sorted(self.coeffs, key=lambda a: (sum(a), a)):
            c = self.coeffs[a]
            mono = "*".join(
                f"x{i + 1}" + (f"^{e}" if e > 1 else "") for i, e in enumerate(a) if e
            )
            if not mono:
                body = str(abs(c))
            else:
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        text = text[2:] if text.startswith("+ ") else "-" + text[2:]
        if self.s:
            return f"v^{self.s}*({text})"
        return text


def ku_monomial(I: Iterable[int], J: Iterable[int], s: int, trunc: Truncation) -> KuElement:
    """Canonical form of ``v^s x^I xbar^J``."""
    I, J = tuple(I), tuple(J)
    if len(I) != trunc.m or len(J) != trunc.m:
        raise ValueError("exponent vectors must have one entry per variable")
    if any(e < 0 for e in I + J):
        raise ValueError("exponents must be non-negative")
    factors = [_univariate(i, j, d) for i, j, d in zip(I, J, trunc.d)]
    return KuElement(trunc, s, _outer(factors))


def _to_dense(a: KuElement) -> np.ndarray:
    arr = np.zeros(a.trunc.shape, dtype=np.int64)
    for e, c in a.coeffs.items():
        arr[e] = c
    return arr


def ku_mul(a: KuElement, b: KuElement) -> KuElement:
    """Product in ``KU^{-2(a.s + b.s)}``, truncated."""
    a._check(b)
    s = a.s + b.s
    if not a.coeffs or not b.coeffs:
        return KuElement.zero(a.trunc, s)
    if len(a.coeffs) > len(b.coeffs):
        a, b = b, a
    d = a.trunc.d
    bound = (
        max(map(abs, a.coeffs.values()))
        * max(map(abs, b.coeffs.values()))
        * len(a.coeffs)
    )
    size = int(np.prod(a.trunc.shape))
    if bound < _INT64_SAFE and size <= _DENSE_LIMIT:
        B = _to_dense(b)
        out = np.zeros_like(B)
        for e, c in a.coeffs.items():
            dst = tuple(slice(k, None) for k in e)
            src = tuple(slice(0, dk + 1 - k) for k, dk in zip(e, d))
            out[dst] += c * B[src]
        idx = np.nonzero(out)
        coeffs = {tuple(int(t) for t in key): int(v) for key, v in zip(zip(*idx), out[idx])}
        return KuElement(a.trunc, s, coeffs)
    out: dict[Exponent, int] = {}
    for e1, c1 in a.coeffs.items():
        for e2, c2 in b.coeffs.items():
            e = tuple(p + q for p, q in zip(e1, e2))
            if all(k <= dk for k, dk in zip(e, d)):
                out[e] = out.get(e, 0) + c1 * c2
    return KuElement(a.trunc, s, out)


def ku_conjugate(a: KuElement) -> KuElement:
    """Image under x_i -> xbar_i, v -> -v."""
    zero = (0,) * a.trunc.m
    sign = -1 if a.s % 2 else 1
    out: dict[Exponent, int] = {}
    for e, c in a.coeffs.items():
        for f, k in ku_monomial(zero, e, a.s, a.trunc).coeffs.items():
            out[f] = out.get(f, 0) + sign * c * k
    return KuElement(a.trunc, a.s, out)


def ku_restrict(a: KuElement, sigma: Iterable[int]) -> KuElement:
    """Set x_i = 0 for every vertex i (1-based) outside ``sigma``."""
    keep = {i - 1 for i in sigma}
    coeffs = {
        e: c
        for e, c in a.coeffs.items()
        if all(k == 0 or i in keep for i, k in enumerate(e))
    }
    return KuElement(a.trunc, a.s, coeffs)


def monomials(trunc: Truncation) -> Iterable[Exponent]:
    """All exponent vectors inside the truncation."""
    return product(*(range(k + 1) for k in trunc.d))
