"""
A tour of KO^*(BT^m)
====================

Elements are finite sums of normal-form symbols [I,J]^(s) plus a
coefficient-ring part.  Equality is checked symbolically, and again after
complexifying into a truncated KU model.
"""

from kotoric import Truncation, complexify, ko_equal, ko_mul, normalize_symbol, parse, realify, render

# Symbols with overlapping supports are rewritten into normal form.
a = normalize_symbol((2, 1), (1, 0), 0)
print("[(2,1),(1,0)]^0 ->", render(a))

# Swapping I and J costs a sign (-1)^s.
print("[(0),(1)]^1    ->", render(normalize_symbol((0,), (1,), 1)))

# Products use the bilinear rule and land back in normal form.
x1, x2 = parse("X_1", m=2), parse("X_2", m=2)
print("X_1 * X_2      ->", render(ko_mul(x1, x2)))

# A rank-two relation checked two ways.
t = Truncation((6, 6))
lhs = parse("X_{1,2}*X_{1,2}", m=2)
rhs = parse("X_1*X_2*X_{1,2} + X_1*X_1*X_2 + X_1*X_2*X_2 + 4*X_1*X_2", m=2)
print("relation holds symbolically:", lhs == rhs, "| after complexifying:", ko_equal(lhs, rhs, t))

# Realification after complexification is multiplication by two.
b = normalize_symbol((1, 0), (0, 2), 1)
print("r(c(b)) == 2b:", ko_equal(realify(complexify(b, t)), b.scale(2), t))

# An infinite relation: this sum is nonzero as a finite expression, yet its
# image vanishes in every truncation up to its length.
series = parse("2[(1),(0)] - [(2),(0)] + [(3),(0)] - [(4),(0)]")
print("series:", render(series))
print("image in CP^4 model:", complexify(series, Truncation((4,))))
