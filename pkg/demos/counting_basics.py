"""Weighted solution counting from first principles.

Walks the core objects: weight sequences on [-N, N], the even moment of
the weighted exponential sum as an exact solution count, the brute-force
oracle, and the two regimes (permutation-forced vs genuine growth).
"""

import math
from fractions import Fraction

from momentcurve import (
    brute_force_mean_value,
    geometric_weights,
    mean_value,
    newton_regime_check,
    random_weights,
    rho,
    unit_weights,
)


def main():
    # a moment is a count: s = 2, k = 2 over x in [-1, 0, 1]
    w = unit_weights(1)
    res = mean_value(w, 2, 2)
    print("J_{2,2}(1) =", res.raw_moment, " normalized =", res.normalized)

    # the sparse engine and the tuple-enumeration oracle agree exactly
    check = brute_force_mean_value(w, 2, 2)
    print("brute force:", check.raw_moment, "equal:",
          check.raw_moment == res.raw_moment)

    # closed form in the quadratic case: 2(2N+1)^2 - (2N+1)
    for n in (5, 20, 50):
        m = 2 * n + 1
        got = mean_value(unit_weights(n), 2, 2).raw_moment
        print(f"N={n:3d}  J = {got}  closed form = {2 * m * m - m}")

    # s = 1 is Parseval: the moment is the coefficient energy, any weights
    g = geometric_weights(8, Fraction(1, 2))
    print("Parseval:", mean_value(g, 1, 2).raw_moment, "=", rho(g).squared)

    # for s <= k the only solutions are permutations of a multiset,
    # so the count is at most s! * (energy)^s
    r = random_weights(4, seed=7)
    for s in (1, 2):
        assert newton_regime_check(r, s, 2)
        moment = mean_value(r, s, 2).raw_moment
        bound = math.factorial(s) * rho(r).squared ** s
        print(f"s={s}: moment {moment} <= {bound} (diagonal regime)")

    # past the diagonal regime the count grows like a power of N
    for n in (4, 8, 16, 32):
        res = mean_value(unit_weights(n), 3, 2)
        print(f"N={n:3d}  s=3 normalized = {float(res.normalized):9.4f}")


if __name__ == "__main__":
    main()
