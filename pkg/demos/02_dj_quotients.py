"""
Davis-Januszkiewicz quotients
=============================

KO of DJ(K) is the quotient of KO^*(BT^m) by the symbols supported on
non-faces of K.  Here K is either two disjoint points or the complex with
facets {1,2} and {2,3,4}.
"""

from kotoric import (
    KoElement,
    Truncation,
    dj_equal,
    ko_mul,
    limit_tuple,
    minimal_nonfaces,
    normalize_symbol,
    render,
    sr_reduce_ko,
    tuple_mul,
)
from kotoric.dj import edge_wedge_triangle, two_points

K = two_points()
a = normalize_symbol((2, 0), (0, 0), 0)
b = normalize_symbol((0, 1), (0, 0), 0)
print("two points, minimal non-faces:", minimal_nonfaces(K))
print("a*b =", render(ko_mul(a, b)), "-> reduced:", render(sr_reduce_ko(ko_mul(a, b), K)))

L = edge_wedge_triangle()
print("\nL facets:", L.facets, "minimal non-faces:", minimal_nonfaces(L))
u = normalize_symbol((1, 2, 0, 0), (0,) * 4, 0)
w = normalize_symbol((0, 1, 1, 0), (0,) * 4, 0)
print("u*w is zero in DJ(L):", dj_equal(ko_mul(u, w), KoElement.zero(4), L, Truncation.uniform(4, 6)))

# The same element, restricted to each facet.
for facet, value in limit_tuple(ko_mul(u, u), L).components.items():
    print(f"  restriction to {facet}: {render(value)}")

# Restriction tuples multiply facet by facet.
pair = tuple_mul(limit_tuple(u, L), limit_tuple(w, L))
print("product of restriction tuples is zero:", pair.is_zero())
