"""
KO of quasitoric manifolds
==========================

A quasitoric manifold is given by a simplicial complex and a characteristic
matrix.  The Sq^2 action on mod-2 cohomology decides whether the finite KU
model can be realified into a description of KO.
"""

from kotoric import (
    bb_numbers,
    is_sq2_acyclic,
    manifold_ko_equal,
    manifold_ko_rank,
    manifold_ku,
    mod2_cohomology,
    parse,
    validate_characteristic,
)
from kotoric.toric import fixtures

fx = fixtures()
print(f"{'manifold':<13}{'betti':<20}{'s':<20}{'m':<16}acyclic")
for name, M in fx.items():
    bb = bb_numbers(M)
    betti = list(mod2_cohomology(M).betti)
    print(f"{name:<13}{str(betti):<20}{str(list(bb.s)):<20}{str(list(bb.m)):<16}{is_sq2_acyclic(M)}")

M = fx["cp2"]
print("\nCP^2 characteristic matrix valid:", validate_characteristic(M))
model = manifold_ku(M)
print("KU model rank:", model.rank, "basis:", model.basis())
print("KO ranks in degrees 0..-7:", [manifold_ko_rank(model, -d) for d in range(8)])

x1, x2 = parse("X_1", m=3), parse("X_2", m=3)
print("X_1 == X_2 in KO(CP^2):", manifold_ko_equal(x1, x2, model))
print("X_1 == X_1^2 in KO(CP^2):", manifold_ko_equal(x1, parse("X_1*X_1", m=3), model))

big = manifold_ku(fx["cp2xcp2"])
print("\nCP^2 x CP^2: KU rank", big.rank, "KO ranks", [manifold_ko_rank(big, -d) for d in range(8)])
