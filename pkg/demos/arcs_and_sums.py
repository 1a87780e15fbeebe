"""Hardy-Littlewood dissection for the quadratic curve.

Evaluates Weyl sums at rational and near-rational points, builds the
major-arc decomposition, measures how well the rational-times-integral
model V = q^{-1} S(q,a) I(beta; X) tracks the true sum on an arc, and
shows the u = 6 complete-sum series refusing to stabilize while u = 10
converges quickly.
"""

from fractions import Fraction

from momentcurve import (
    arc_decomposition,
    complete_sum,
    major_arc_approximant,
    minor_arc_sup_sample,
    oscillatory_integral,
    singular_series,
    weyl_sum,
)


def main():
    x = 1000

    # the full sum has 2X+1 terms; at the origin it is exactly that,
    # while a half-integer linear phase cancels all but one term
    print("f(0, 0)    =", abs(weyl_sum((0, 0), x)))
    print("f(1/2, 0)  =", abs(weyl_sum((Fraction(1, 2), 0), x)))

    dec = arc_decomposition(x, 2)
    print(f"\n{len(dec.arcs)} major arcs at X = {x} "
          f"(denominators up to {dec.cutoff:.2f})")

    # on an arc, the model should capture nearly all of the mass
    q, a = 3, (1, 2)
    alpha = (Fraction(a[0], q) + Fraction(1, 8 * x),
             Fraction(a[1], q) - Fraction(1, 8 * x * x))
    truth = weyl_sum(alpha, x)
    model = major_arc_approximant(alpha, dec)
    print(f"near a/q = (1/3, 2/3): |f| = {abs(truth):9.3f}  "
          f"|V| = {abs(model):9.3f}  |f - V| = {abs(truth - model):7.3f}")

    # off the arcs the sum is small: square-root scale, not X
    samp = minor_arc_sup_sample(x, 2, grid_density=48, seed=1)
    print(f"minor-arc sampled sup = {samp.max_abs:.1f} "
          f"(trivial bound {2 * x + 1})")

    # archimedean factor: I(0; X) = 2X exactly
    print("\nI(0; X) =", oscillatory_integral((0.0, 0.0), x).real)

    # Gauss-sum magnitudes: |S(q, a)| <= q, exactly sqrt(q) at odd
    # prime powers with invertible top coefficient
    for q, a in ((5, (1, 1)), (9, (1, 1)), (13, (2, 3)), (25, (1, 1))):
        print(f"|S({q:2d}, {a})| = {abs(complete_sum(q, a)):7.4f}"
              f"   sqrt(q) = {q ** 0.5:.4f}")

    # the complete-sum series: divergent at u = 6, summable at u = 10
    print("\npartial sums over q <= Q:")
    print("  Q    u=6        u=10")
    for q_max in (25, 50, 100):
        s6 = singular_series(2, 6, q_max).value
        s10 = singular_series(2, 10, q_max).value
        print(f"{q_max:5d}  {s6:9.5f}  {s10:9.6f}")


if __name__ == "__main__":
    main()
