"""Simplicial complexes, Stanley-Reisner quotients and the Davis-Januszkiewicz
rings KU^*(DJ(K)) and KO^*(DJ(K))."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterable, Mapping

from .ko import KoElement, complexify, ko_mul
from .ku import KuElement, Truncation

Face = tuple[int, ...]


class SimplicialComplex:
    """Complex on vertices 1..m given by its facets (maximal faces)."""

    def __init__(self, m: int, facets: Iterable[Iterable[int]]):
        self.m = int(m)
        fs = sorted({tuple(sorted(set(int(v) for v in f))) for f in facets}, key=lambda f: (len(f), f))
        if not fs:
            raise ValueError("a complex needs at least one facet (use [[]] for the empty complex)")
        for f in fs:
            if any(v < 1 or v > self.m for v in f):
                raise ValueError(f"facet {list(f)} has vertices outside 1..{self.m}")
        for a, b in combinations(fs, 2):
            if set(a) <= set(b):
                raise ValueError(f"facet {list(a)} is contained in facet {list(b)}")
        covered = set().union(*map(set, fs))
        missing = set(range(1, self.m + 1)) - covered
        if missing:
            raise ValueError(f"vertices {sorted(missing)} are not faces")
        self.facets: tuple[Face, ...] = tuple(sorted(fs))
        self._facet_sets = [frozenset(f) for f in self.facets]

    @classmethod
    def from_faces(cls, m: int, faces: Iterable[Iterable[int]]) -> "SimplicialComplex":
        """Build from any generating set of faces; keeps the maximal ones."""
        fs = {frozenset(f) for f in faces}
        maximal = [f for f in fs if not any(f < g for g in fs)]
        return cls(m, [sorted(f) for f in maximal])

    @classmethod
    def from_dict(cls, data: Mapping) -> "SimplicialComplex":
        try:
            m = data["m"]
            facets = data["facets"]
        except (KeyError, TypeError) as exc:
            raise ValueError('complex must look like {"m": int, "facets": [[int, ...], ...]}') from exc
        if not isinstance(m, int) or not isinstance(facets, list):
            raise ValueError("complex: 'm' must be an int and 'facets' a list")
        for f in facets:
            if not isinstance(f, list) or not all(isinstance(v, int) for v in f):
                raise ValueError(f"complex: facet {f!r} is not a list of ints")
        return cls(m, facets)

    @classmethod
    def from_json(cls, text: str) -> "SimplicialComplex":
        return cls.from_dict(json.loads(text))

    def to_dict(self) -> dict:
        return {"m": self.m, "facets": [list(f) for f in self.facets]}

    def is_face(self, sigma: Iterable[int]) -> bool:
        s = set(sigma)
        return any(s <= f for f in self._facet_sets)

    def faces(self) -> list[Face]:
        """Every face, including the empty one, sorted by size."""
        out = set()
        for f in self.facets:
            for k in range(len(f) + 1):
                out.update(combinations(f, k))
        return sorted(out, key=lambda f: (len(f), f))

    @property
    def dimension(self) -> int:
        return max(len(f) for f in self.facets) - 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SimplicialComplex) and (self.m, self.facets) == (other.m, other.facets)

    def __hash__(self) -> int:
        return hash((self.m, self.facets))

    def __repr__(self) -> str:
        return f"SimplicialComplex(m={self.m}, facets={[list(f) for f in self.facets]})"


def minimal_nonfaces(K: SimplicialComplex) -> list[Face]:
    """Inclusion-minimal non-faces, i.e. generators of the Stanley-Reisner ideal."""
    out = []
    for k in range(2, min(K.m, K.dimension + 2) + 1):
        for cand in combinations(range(1, K.m + 1), k):
            if K.is_face(cand):
                continue
            if all(K.is_face(sub) for sub in combinations(cand, k - 1)):
                out.append(cand)
    return out


def _support(*vectors: Iterable[int]) -> set[int]:
    return {k + 1 for v in vectors for k, e in enumerate(v) if e}


def sr_reduce_ku(a: KuElement, K: SimplicialComplex) -> KuElement:
    """Image in KU^*(DJ(K)): drop monomials whose support is a non-face."""
    _check_m(a.trunc.m, K)
    return KuElement(a.trunc, a.s, {e: c for e, c in a.coeffs.items() if K.is_face(_support(e))})


def sr_reduce_ko(a: KoElement, K: SimplicialComplex) -> KoElement:
    """Image in KO^*(DJ(K)): drop symbols [I,J] with eps(I) u eps(J) not a face."""
    _check_m(a.m, K)
    red = {key: c for key, c in a.reduced.items() if K.is_face(_support(*key))}
    return KoElement(a.m, a.degree, a.scalar, red)


def _check_m(m: int, K: SimplicialComplex) -> None:
    if m != K.m:
        raise ValueError(f"element has {m} variables, complex has {K.m} vertices")


def dj_equal(a: KoElement, b: KoElement, K: SimplicialComplex, trunc: Truncation) -> bool:
    """Equality in KO^*(DJ(K)): the complexified difference lies in the
    Stanley-Reisner ideal of the truncated KU model."""
    _check_m(a.m, K)
    if a.degree != b.degree and not (a.is_zero() or b.is_zero()):
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")
    diff = a - b
    if not diff.scalar.torsion_part().is_zero():
        return False
    if diff.degree % 2:
        return True
    return sr_reduce_ku(complexify(diff, trunc), K).is_zero()


def ko_restrict(a: KoElement, sigma: Iterable[int]) -> KoElement:
    """Restriction KO^*(BT^m) -> KO^*(BT^sigma), kept in m-variable notation."""
    keep = set(sigma)
    red = {key: c for key, c in a.reduced.items() if _support(*key) <= keep}
    return KoElement(a.m, a.degree, a.scalar, red)


@dataclass(frozen=True, eq=False)
class LimitTuple:
    """Compatible family (u_sigma) indexed by the facets of K."""

    K: SimplicialComplex
    components: Mapping[Face, KoElement] = field(default_factory=dict)

    def __getitem__(self, sigma: Iterable[int]) -> KoElement:
        return self.components[tuple(sorted(sigma))]

    def is_zero(self) -> bool:
        return all(u.is_zero() for u in self.components.values())

    def is_compatible(self) -> bool:
        facets = list(self.components)
        for f, g in combinations(facets, 2):
            common = set(f) & set(g)
            if ko_restrict(self.components[f], common) != ko_restrict(self.components[g], common):
                return False
        return True

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, LimitTuple):
            return NotImplemented
        return self.K == other.K and all(
            self.components[f] == other.components[f] for f in self.K.facets
        )

    def __hash__(self) -> int:
        return hash((self.K, tuple(self.components[f] for f in self.K.facets)))

    def __repr__(self) -> str:
        inner = ", ".join(f"{list(f)}: {u}" for f, u in self.components.items())
        return f"LimitTuple({inner})"


def limit_tuple(a: KoElement, K: SimplicialComplex) -> LimitTuple:
    """Image of ``a`` in the inverse limit over the faces of K."""
    _check_m(a.m, K)
    return LimitTuple(K, {f: ko_restrict(a, f) for f in K.facets})


def tuple_mul(t1: LimitTuple, t2: LimitTuple) -> LimitTuple:
    """Facetwise product."""
    if t1.K != t2.K:
        raise ValueError("tuples over different complexes")
    return LimitTuple(
        t1.K, {f: ko_restrict(ko_mul(t1.components[f], t2.components[f]), f) for f in t1.K.facets}
    )


def two_points() -> SimplicialComplex:
    """Two vertices and no edge."""
    return SimplicialComplex(2, [[1], [2]])


def edge_wedge_triangle() -> SimplicialComplex:
    """An edge {1,2} and a full triangle {2,3,4} glued at vertex 2."""
    return SimplicialComplex(4, [[1, 2], [2, 3, 4]])


def boundary_of_simplex(n: int) -> SimplicialComplex:
    """Boundary of the n-simplex on vertices 1..n+1."""
    vs = range(1, n + 2)
    return SimplicialComplex(n + 1, [[v for v in vs if v != w] for w in vs])


def full_simplex(m: int) -> SimplicialComplex:
    return SimplicialComplex(m, [list(range(1, m + 1))])
