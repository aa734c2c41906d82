"""Quasitoric manifolds from (K, lambda): mod-2 cohomology with Sq^2,
BB-numbers, a finite integral KU model and KO equality and ranks in the
Sq^2-acyclic case."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations_with_replacement
from math import comb
from typing import Iterable, Mapping, Sequence

from .dj import SimplicialComplex
from .ko import KoElement, complexify
from .ku import Truncation
from .linalg import (
    F2Matrix,
    LatticeQuotient,
    f2_echelon,
    f2_rank,
    f2_reduce,
    smith_normal_form,
)

Exponent = tuple[int, ...]
Poly = dict  # Exponent -> int


class NotSq2Acyclic(RuntimeError):
    """Raised when a KO computation needs an Sq^2-acyclic manifold."""


class InvalidCharacteristic(ValueError):
    """Characteristic data fails the direct-summand condition."""


@dataclass(frozen=True)
class CharacteristicMatrix:
    """m x n integer matrix; row i is the circle assigned to vertex i."""

    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        rows = tuple(tuple(int(v) for v in r) for r in self.rows)
        if not rows:
            object.__setattr__(self, "rows", ())
            return
        if len({len(r) for r in rows}) != 1:
            raise ValueError("characteristic matrix rows have different lengths")
        object.__setattr__(self, "rows", rows)

    @property
    def m(self) -> int:
        return len(self.rows)

    @property
    def n(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    def submatrix(self, sigma: Iterable[int]) -> list[list[int]]:
        return [list(self.rows[i - 1]) for i in sorted(sigma)]


@dataclass(frozen=True)
class Manifold:
    """Quasitoric data: the dual complex K_P and a characteristic matrix.

    ``n`` is normally the column count of lambda; it is stored separately so
    the point (no vertices, empty matrix) keeps n = 0.
    """

    K: SimplicialComplex
    lam: CharacteristicMatrix
    name: str = ""

    def __post_init__(self) -> None:
        if self.lam.m != self.K.m:
            raise ValueError(f"lambda has {self.lam.m} rows, complex has {self.K.m} vertices")

    @property
    def n(self) -> int:
        return self.lam.n

    @classmethod
    def from_dict(cls, data: Mapping, name: str = "") -> "Manifold":
        try:
            K = SimplicialComplex.from_dict(data["complex"])
            rows = data["lambda"]
        except (KeyError, TypeError) as exc:
            raise ValueError('manifold must look like {"complex": {...}, "lambda": [[int, ...], ...]}') from exc
        if not isinstance(rows, list) or not all(
            isinstance(r, list) and all(isinstance(v, int) for v in r) for r in rows
        ):
            raise ValueError("lambda must be a list of integer lists")
        return cls(K, CharacteristicMatrix(tuple(map(tuple, rows))), name or data.get("name", ""))

    @classmethod
    def from_json(cls, text: str, name: str = "") -> "Manifold":
        return cls.from_dict(json.loads(text), name)

    def to_dict(self) -> dict:
        out = {"complex": self.K.to_dict(), "lambda": [list(r) for r in self.lam.rows]}
        if self.name:
            out["name"] = self.name
        return out


def _as_pair(K, lam) -> tuple[SimplicialComplex, CharacteristicMatrix]:
    if isinstance(K, Manifold):
        return K.K, K.lam
    if not isinstance(lam, CharacteristicMatrix):
        lam = CharacteristicMatrix(tuple(map(tuple, lam)))
    return K, lam


def validate_characteristic(K, lam=None) -> bool:
    """True iff on every face the rows of lambda span a direct summand of
    rank equal to the face size."""
    K, lam = _as_pair(K, lam)
    if lam.m != K.m:
        raise ValueError(f"lambda has {lam.m} rows, complex has {K.m} vertices")
    for face in K.faces():
        if not face:
            continue
        if len(face) > lam.n:
            return False
        factors = smith_normal_form(lam.submatrix(face))
        if any(d != 1 for d in factors):
            return False
    return True


def _require_valid(K: SimplicialComplex, lam: CharacteristicMatrix) -> None:
    if not validate_characteristic(K, lam):
        raise InvalidCharacteristic("characteristic matrix is not unimodular on every face")


def _face_monomials(K: SimplicialComplex, degree: int) -> list[Exponent]:
    """Exponent vectors of the given total degree supported on a face."""
    out = []
    for combo in combinations_with_replacement(range(K.m), degree):
        if K.is_face({i + 1 for i in combo}):
            e = [0] * K.m
            for i in combo:
                e[i] += 1
            out.append(tuple(e))
    return sorted(out, reverse=True)


def _times_var(e: Exponent, i: int) -> Exponent:
    return e[:i] + (e[i] + 1,) + e[i + 1 :]


# ---------------------------------------------------------------------------
# mod 2 cohomology


@dataclass
class _Degree:
    monomials: list[Exponent]
    index: dict[Exponent, int]
    relations: dict[int, int]  # echelon basis over monomial bits
    basis: list[int]  # monomial positions of standard monomials

    def coords(self, bits: int) -> int:
        """Coordinates (bit k = basis[k]) of a vector of monomial bits."""
        r = f2_reduce(bits, self.relations)
        out = 0
        for k, col in enumerate(self.basis):
            if (r >> col) & 1:
                out |= 1 << k
        return out


class Mod2Cohomology:
    """H^*(M; F2) = F2[v_1..v_m] / (I_SR + linear forms), by half-degree.

    Each degree keeps the face-supported monomials, an echelon basis of the
    relations, and the standard monomials spanning the quotient.
    """

    def __init__(self, K: SimplicialComplex, lam: CharacteristicMatrix):
        self.K, self.lam = K, lam
        self.n = lam.n
        self.degrees: list[_Degree] = []
        forms = [[i for i in range(K.m) if lam.rows[i][j] % 2] for j in range(self.n)]
        for k in range(self.n + 1):
            monos = _face_monomials(K, k)
            index = {e: p for p, e in enumerate(monos)}
            rels = []
            if k:
                for mu in _face_monomials(K, k - 1):
                    for form in forms:
                        bits = 0
                        for i in form:
                            p = index.get(_times_var(mu, i))
                            if p is not None:
                                bits ^= 1 << p
                        if bits:
                            rels.append(bits)
            ech = f2_echelon(rels)
            basis = [p for p in range(len(monos)) if p not in ech]
            self.degrees.append(_Degree(monos, index, ech, basis))

    def dim(self, k: int) -> int:
        """Dimension of H^{2k}."""
        if k < 0 or k > self.n:
            return 0
        return len(self.degrees[k].basis)

    @property
    def betti(self) -> tuple[int, ...]:
        return tuple(self.dim(k) for k in range(self.n + 1))

    def basis_monomials(self, k: int) -> list[Exponent]:
        d = self.degrees[k]
        return [d.monomials[p] for p in d.basis]

    def class_of(self, poly: Iterable[Exponent]) -> tuple[int, int]:
        """(half-degree, coordinate bits) of a sum of monomials of one degree."""
        poly = list(poly)
        if not poly:
            return 0, 0
        k = sum(poly[0])
        if any(sum(e) != k for e in poly):
            raise ValueError("polynomial is not homogeneous")
        if k > self.n:
            return k, 0
        d = self.degrees[k]
        bits = 0
        for e in poly:
            p = d.index.get(tuple(e))
            if p is not None:
                bits ^= 1 << p
        return k, d.coords(bits)

    def _expand(self, k: int, coords: int) -> list[Exponent]:
        d = self.degrees[k]
        return [d.monomials[d.basis[j]] for j in range(len(d.basis)) if (coords >> j) & 1]

    def multiply(self, k1: int, a: int, k2: int, b: int) -> tuple[int, int]:
        """Product of classes given in coordinates."""
        prods = []
        for e in self._expand(k1, a):
            for f in self._expand(k2, b):
                prods.append(tuple(p + q for p, q in zip(e, f)))
        counts: dict[Exponent, int] = {}
        for e in prods:
            counts[e] = counts.get(e, 0) ^ 1
        k = k1 + k2
        return k, self.class_of([e for e, c in counts.items() if c])[1] if counts else 0

    def sq2_matrix(self, k: int) -> F2Matrix:
        """Sq^2: H^{2k} -> H^{2k+2}; row r lists the images' r-th coordinates."""
        src = self.dim(k)
        tgt = self.dim(k + 1)
        if tgt == 0 or src == 0:
            return F2Matrix.zeros(tgt, src)
        d = self.degrees[k + 1]
        cols = []
        for mu in self.basis_monomials(k):
            bits = 0
            for i, a in enumerate(mu):
                if a % 2:
                    p = d.index.get(_times_var(mu, i))
                    if p is not None:
                        bits ^= 1 << p
            cols.append(d.coords(bits))
        return F2Matrix(src, tgt, tuple(cols)).transpose()

    def sq2_squares_to_zero(self) -> bool:
        return all((self.sq2_matrix(k + 1) @ self.sq2_matrix(k)).is_zero() for k in range(self.n))


def mod2_cohomology(K, lam=None) -> Mod2Cohomology:
    K, lam = _as_pair(K, lam)
    _require_valid(K, lam)
    return Mod2Cohomology(K, lam)


@dataclass(frozen=True)
class BBNumbers:
    """Multiplicities of the one-cell module (s, by half-degree 0..n) and the
    two-cell Sq^2 module (m, by half-degree of its bottom cell 0..n-1) in
    reduced mod-2 cohomology."""

    s: tuple[int, ...]
    m: tuple[int, ...]

    def nonzero_s(self) -> dict[int, int]:
        return {i: v for i, v in enumerate(self.s) if v}


def bb_numbers(K, lam=None) -> BBNumbers:
    H = mod2_cohomology(K, lam)
    return _bb_from(H)


def _bb_from(H: Mod2Cohomology) -> BBNumbers:
    n = H.n
    reduced_dim = [0] + [H.dim(k) for k in range(1, n + 1)]
    ms = [0 if j == 0 else f2_rank(H.sq2_matrix(j)) for j in range(n)]
    s = []
    for i in range(n + 1):
        below = ms[i - 1] if i >= 1 else 0
        here = ms[i] if i < n else 0
        s.append(reduced_dim[i] - here - below)
    return BBNumbers(tuple(s), tuple(ms))


def is_sq2_acyclic(K, lam=None) -> bool:
    return not any(bb_numbers(K, lam).s)


# ---------------------------------------------------------------------------
# finite KU model


def _poly_mul(a: Poly, b: Poly, window: int, K: SimplicialComplex) -> Poly:
    out: Poly = {}
    for e, c in a.items():
        de = sum(e)
        for f, d in b.items():
            if de + sum(f) >= window:
                continue
            g = tuple(p + q for p, q in zip(e, f))
            if not K.is_face({i + 1 for i, v in enumerate(g) if v}):
                continue
            out[g] = out.get(g, 0) + c * d
    return {e: c for e, c in out.items() if c}


def _line_power(i: int, k: int, m: int, window: int) -> Poly:
    """(1 + x_i)^k truncated below ``window``; negative k via the geometric
    series."""
    out: Poly = {}
    for t in range(window):
        c = comb(k, t) if k >= 0 else (-1) ** t * comb(-k + t - 1, t)
        if c:
            e = [0] * m
            e[i] = t
            out[tuple(e)] = c
    return out


@dataclass
class FiniteKuAlgebra:
    """Z[x_1..x_m] / (I_SR + J + monomials of degree >= window).

    ``monomials`` are the face-supported monomials below the window, ordered
    by decreasing degree; a polynomial is a sparse vector over them and
    :attr:`quotient` gives canonical normal forms.
    """

    K: SimplicialComplex
    lam: CharacteristicMatrix
    window: int
    monomials: list[Exponent]
    index: dict[Exponent, int]
    quotient: LatticeQuotient
    generators: list[Poly] = field(repr=False)

    @property
    def n(self) -> int:
        return self.lam.n

    @property
    def m(self) -> int:
        return self.K.m

    @property
    def rank(self) -> int:
        return self.quotient.rank

    @cached_property
    def acyclic(self) -> bool:
        if self.n == 0:
            return True
        return is_sq2_acyclic(self.K, self.lam)

    def vector(self, poly: Mapping[Exponent, int]) -> dict[int, int]:
        """Sparse vector of a polynomial, dropping terms the model kills."""
        vec: dict[int, int] = {}
        for e, c in poly.items():
            p = self.index.get(tuple(e))
            if p is not None and c:
                vec[p] = vec.get(p, 0) + c
        return {p: c for p, c in vec.items() if c}

    def normal_form(self, poly: Mapping[Exponent, int]) -> dict[Exponent, int]:
        red = self.quotient.reduce(self.vector(poly))
        return {self.monomials[p]: c for p, c in sorted(red.items())}

    def is_zero(self, poly: Mapping[Exponent, int]) -> bool:
        return self.quotient.contains(self.vector(poly))

    def mul(self, a: Mapping[Exponent, int], b: Mapping[Exponent, int]) -> dict[Exponent, int]:
        return self.normal_form(_poly_mul(dict(a), dict(b), self.window, self.K))

    def conjugate(self, poly: Mapping[Exponent, int]) -> dict[Exponent, int]:
        """x_i -> (1 + x_i)^(-1) - 1, not yet reduced."""
        m = self.m
        inv = []
        for i in range(m):
            series = _line_power(i, -1, m, self.window)
            series.pop((0,) * m, None)
            inv.append(series)
        one = {(0,) * m: 1}
        out: Poly = {}
        for e, c in poly.items():
            term = dict(one)
            for i, a in enumerate(e):
                for _ in range(a):
                    term = _poly_mul(term, inv[i], self.window, self.K)
            for f, d in term.items():
                out[f] = out.get(f, 0) + c * d
        return {e: c for e, c in out.items() if c}

    def basis(self) -> list[Exponent]:
        """Monomial Z-basis of the quotient (needs unit pivots)."""
        if not self.quotient.unit_pivots:
            raise ArithmeticError("quotient has torsion; no monomial basis")
        return [self.monomials[p] for p in self.quotient.free_columns()]


def manifold_ku(K, lam=None, window: int | None = None) -> FiniteKuAlgebra:
    """Finite integral model of KU^0(M); window defaults to n + 1."""
    K, lam = _as_pair(K, lam)
    _require_valid(K, lam)
    n, m = lam.n, K.m
    if window is None:
        window = n + 1
    if window < n + 1:
        raise ValueError(f"window must be at least n + 1 = {n + 1}")
    monos = [mu for k in range(window - 1, -1, -1) for mu in _face_monomials(K, k)]
    index = {e: p for p, e in enumerate(monos)}
    gens = []
    one = (0,) * m
    for j in range(n):
        g: Poly = {one: 1}
        for i in range(m):
            if lam.rows[i][j]:
                g = _poly_mul(g, _line_power(i, lam.rows[i][j], m, window), window, K)
        g[one] = g.get(one, 0) - 1
        gens.append({e: c for e, c in g.items() if c})
    relations = []
    for mu in monos:
        mono = {mu: 1}
        for g in gens:
            prod = _poly_mul(mono, g, window, K)
            vec = {index[e]: c for e, c in prod.items()}
            if vec:
                relations.append(vec)
    quotient = LatticeQuotient(len(monos), relations)
    model = FiniteKuAlgebra(K, lam, window, monos, index, quotient, gens)
    if model.rank != len(K.facets):
        raise ArithmeticError(
            f"model rank {model.rank} differs from facet count {len(K.facets)}; window too small"
        )
    return model


def _model_trunc(model: FiniteKuAlgebra) -> Truncation:
    d = max(2, model.window - 1)
    return Truncation.uniform(model.m, d + d % 2)


def _require_acyclic(model: FiniteKuAlgebra) -> None:
    if not model.acyclic:
        raise NotSq2Acyclic("KO computations need an Sq^2-acyclic manifold")


def ko_image(a: KoElement, model: FiniteKuAlgebra) -> dict[Exponent, int]:
    """Normal form of c(a) in the KU model (v^s dropped)."""
    if a.m != model.m:
        raise ValueError(f"element has {a.m} variables, model has {model.m}")
    u = complexify(a, _model_trunc(model))
    return model.normal_form(u.coeffs)


def manifold_ko_equal(a: KoElement, b: KoElement, model: FiniteKuAlgebra) -> bool:
    """Equality in KO^*(M) for Sq^2-acyclic M, via injectivity of
    complexification into the KU model."""
    _require_acyclic(model)
    if a.m != model.m or b.m != model.m:
        raise ValueError(f"elements must have {model.m} variables")
    if a.degree != b.degree and not (a.is_zero() or b.is_zero()):
        raise ValueError(f"degree mismatch: {a.degree} vs {b.degree}")
    diff = a - b
    if not diff.scalar.torsion_part().is_zero():
        return False
    if diff.degree % 2:
        return True
    u = complexify(diff, _model_trunc(model))
    return model.is_zero(u.coeffs)


def manifold_ko_rank(model: FiniteKuAlgebra, degree: int) -> int:
    """Rank of KO^degree(M): the rank of (1 + (-1)^s conjugation) on the KU
    model, s = -degree/2; zero in odd degrees."""
    _require_acyclic(model)
    if degree % 2:
        return 0
    sign = -1 if (-degree // 2) % 2 else 1
    images = []
    for mu in model.monomials:
        img = model.vector(model.conjugate({mu: 1}))
        img = {p: sign * c for p, c in img.items()}
        p = model.index[mu]
        img[p] = img.get(p, 0) + 1
        images.append({q: c for q, c in img.items() if c})
    return model.quotient.image_rank(images)


# ---------------------------------------------------------------------------
# fixtures


def _boundary_simplex(vertices: Sequence[int]) -> list[list[int]]:
    vs = list(vertices)
    return [[v for v in vs if v != w] for w in vs]


def projective_space(n: int) -> Manifold:
    """CP^n over the n-simplex."""
    if n < 1:
        raise ValueError("n must be positive")
    K = SimplicialComplex(n + 1, _boundary_simplex(range(1, n + 2)))
    rows = [tuple(1 if j == i else 0 for j in range(n)) for i in range(n)] + [(-1,) * n]
    return Manifold(K, CharacteristicMatrix(tuple(rows)), f"CP{n}")


def _square() -> SimplicialComplex:
    return SimplicialComplex(4, [[1, 2], [2, 3], [3, 4], [1, 4]])


def hirzebruch(a: int) -> Manifold:
    """Hirzebruch surface with twist a; a = 0 is CP^1 x CP^1."""
    lam = CharacteristicMatrix(((1, 0), (0, 1), (-1, a), (0, -1)))
    return Manifold(_square(), lam, f"H{a}")


def cp1_x_cp1() -> Manifold:
    return Manifold(_square(), CharacteristicMatrix(((1, 0), (0, 1), (-1, 0), (0, -1))), "CP1xCP1")


def product(a: Manifold, b: Manifold) -> Manifold:
    """Product manifold: join of complexes, block-diagonal lambda."""
    ma, mb = a.K.m, b.K.m
    facets = [list(f) + [v + ma for v in g] for f in a.K.facets for g in b.K.facets]
    K = SimplicialComplex(ma + mb, facets)
    rows = [r + (0,) * b.n for r in a.lam.rows] + [(0,) * a.n + r for r in b.lam.rows]
    return Manifold(K, CharacteristicMatrix(tuple(rows)), f"{a.name}x{b.name}")


def point() -> Manifold:
    return Manifold(SimplicialComplex(0, [[]]), CharacteristicMatrix(()), "point")


def fixtures() -> dict[str, Manifold]:
    out = {f"cp{n}": projective_space(n) for n in range(1, 6)}
    out["cp1xcp1"] = cp1_x_cp1()
    out["cp2xcp2"] = product(projective_space(2), projective_space(2))
    for a in (1, 2, 3):
        out[f"hirzebruch{a}"] = hirzebruch(a)
    return out
