"""Congruence-class conditioning diagnostics.

Splits the coefficient energy over residue classes mod p^c, counts
well-conditioned lift tuples, audits the congruence-box cardinality
bound k! p^(k(k-1)(a+b)/2) by exhaustive enumeration, and verifies the
exact clustered/spread split T1 + T2 = I of a mixed moment.
"""

from momentcurve import (
    audit_T_split,
    box_cardinality_audit,
    class_profile,
    mixed_moment_I,
    random_weights,
    rho,
    select_prime,
    well_conditioned_tuples,
)


def main():
    w = random_weights(6, seed=3)
    prime = 3

    # the class profile partitions the energy exactly, at every level
    for level in (0, 1, 2):
        prof = class_profile(w, prime, level)
        rows = [(xi, prof.energy(xi)) for xi in range(1, prime**level + 1)
                if prof.energy(xi) != 0]
        print(f"level {level}: {len(rows)} occupied classes, "
              f"total {prof.total()} == rho^2 {rho(w).squared}")

    # lift tuples with pairwise-distinct classes one level up
    tup = well_conditioned_tuples(prime, 1, 1, 2)
    print(f"\nwell-conditioned pairs over class 1 mod {prime}: {tup.count}")

    # the box bound, checked against every target exhaustively
    audit = box_cardinality_audit(prime, 0, 1, 2)
    print(f"box audit (a=0, b=1, k=2): max card {audit.max_card} "
          f"<= bound {audit.bound}: {audit.passed}")
    print(f"  witness classes xi={audit.witness_xi} eta={audit.witness_eta}")

    # auxiliary prime choice above X^theta
    sel = select_prime(1000, "1/4", 2)
    print(f"\nprimes above 1000^(1/4): first = {sel.prime}, "
          f"{len(sel.candidates)} candidates, "
          f"exceeds 2m: {sel.exceeds_two_m}")

    # T-split of the mixed moment: exact, and the parts are nonnegative
    moment = mixed_moment_I(w, prime, 0, 1, 1, 1, s=3, k=2)
    split = audit_T_split(w, prime, 0, 1, 1, 1, s=3, k=2)
    print(f"\nI(xi=1, eta=1) = {moment.value}")
    print(f"T1 = {split.t1}")
    print(f"T2 = {split.t2}")
    print("T1 + T2 == I:", split.t1 + split.t2 == moment.value)


if __name__ == "__main__":
    main()
