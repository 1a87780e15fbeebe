"""Congruence-class conditioning diagnostics for the quadratic-to-k system.

Given an auxiliary prime p, weight sequences split into residue classes
modulo p^c.  This module computes the per-class energies, the
well-conditioned tuple families (k residues, pairwise distinct one level
up), the conditioned k-fold amplitude maps built from them, the mixed
moments that pair a conditioned block at level a with a plain class
block at level b, their aggregated and normalized forms, and exhaustive
enumerations of the congruence solution boxes used to bound those
moments.  Everything desk-scale is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import ParameterError, ResourceError
from .meanvalue import (
    AmplitudeMap,
    ENTRY_CAP_DEFAULT,
    conj_value,
    convolve,
    identity_map,
    normalize_exponents,
    power,
    single_factor_map,
)
from .weights import MODE_COMPLEX, Weights, rho


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p < 4:
        return True
    if p % 2 == 0:
        return False
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def _check_prime(p: int) -> None:
    if not is_prime(p):
        raise ParameterError(f"{p} is not prime")


def class_index(n: int, modulus: int) -> int:
    """Residue class label in [1, modulus] (0 maps to modulus)."""
    r = n % modulus
    return r if r >= 1 else modulus


# ---------------------------------------------------------------------------
# prime selection


@dataclass(frozen=True)
class PrimeSelection:
    prime: int
    candidates: tuple[int, ...]
    x: int
    theta: Fraction
    k: int
    m_value: float  # X^theta, for reporting only
    exceeds_two_m: bool  # largest candidate above 2*X^theta (asymptotic slack)


def _prime_stream():
    yield 2
    found = [2]
    n = 3
    while True:
        if all(n % q for q in found if q * q <= n):
            found.append(n)
            yield n
        n += 2


def select_prime(x: int, theta, k: int, count_cap: int = 100_000) -> PrimeSelection:
    """Candidate primes just above X^theta; the working prime is the least.

    Returns the floor(k^3/theta) + 1 smallest primes exceeding X^theta,
    compared exactly via p^den > X^num.  The classical guarantee that the
    candidates stay below 2*X^theta is asymptotic; at desk scale we only
    flag the overshoot.
    """
    theta = Fraction(theta)
    if x < 1:
        raise ParameterError(f"X must be >= 1, got {x}")
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    if not 0 < theta:
        raise ParameterError(f"theta must be positive, got {theta}")
    num, den = theta.numerator, theta.denominator
    # M >= X leaves no room for congruence classes below the radius
    if x == 1 or theta >= 1:
        raise ParameterError(f"X^theta must be smaller than X (X={x}, theta={theta})")
    count = (k**3 * den) // num + 1
    if count > count_cap:
        raise ParameterError(
            f"candidate count floor(k^3/theta)+1 = {count} exceeds cap {count_cap}"
        )
    x_num = x**num
    candidates = []
    for p in _prime_stream():
        if p**den > x_num:
            candidates.append(p)
            if len(candidates) == count:
                break
    m_value = float(x) ** float(theta)
    exceeds = candidates[-1] ** den > (2**den) * x_num
    return PrimeSelection(
        prime=candidates[0],
        candidates=tuple(candidates),
        x=x,
        theta=theta,
        k=k,
        m_value=m_value,
        exceeds_two_m=exceeds,
    )


# ---------------------------------------------------------------------------
# class energies


@dataclass(frozen=True)
class CongruenceProfile:
    prime: int
    level: int
    x: int
    mode: str
    energies: dict[int, object]  # class label (1..p^level) -> exact energy

    @property
    def modulus(self) -> int:
        return self.prime**self.level

    def energy(self, xi: int):
        return self.energies.get(xi, 0)

    def total(self):
        return sum(self.energies.values())


PROFILE_CLASS_CAP = 1_000_000


def class_profile(w: Weights, prime: int, level: int) -> CongruenceProfile:
    """Per-class energies sum |a_n|^2 over n = xi (mod prime^level).

    Energies are raw (no zero-sequence convention) so the partition
    identity sum_xi rho_c(xi)^2 = rho_0(1)^2 holds verbatim.
    """
    _check_prime(prime)
    if level < 0:
        raise ParameterError(f"level must be >= 0, got {level}")
    modulus = prime**level
    if modulus > PROFILE_CLASS_CAP:
        raise ParameterError(f"class count {modulus} exceeds cap {PROFILE_CLASS_CAP}")
    energies: dict[int, object] = {xi: 0 for xi in range(1, modulus + 1)}
    for n, v in w.values.items():
        xi = class_index(n, modulus)
        if isinstance(v, complex):
            energies[xi] = energies[xi] + (v.real * v.real + v.imag * v.imag)
        else:
            energies[xi] = energies[xi] + v * v
    return CongruenceProfile(prime, level, w.n_max, w.mode, energies)


# ---------------------------------------------------------------------------
# well-conditioned tuples and conditioned amplitudes


@dataclass(frozen=True)
class WellConditionedTuples:
    prime: int
    level: int
    xi: int
    k: int
    tuples: tuple[tuple[int, ...], ...]

    @property
    def count(self) -> int:
        return len(self.tuples)


def _lifts(prime: int, level: int, xi: int) -> list[int]:
    # the p classes at level c+1 sitting over class xi at level c
    return [xi + t * prime**level for t in range(prime)]


def well_conditioned_tuples(prime: int, level: int, xi: int, k: int) -> WellConditionedTuples:
    """Ordered k-tuples of distinct one-level lifts of class xi, lex order."""
    _check_prime(prime)
    if level < 0:
        raise ParameterError(f"level must be >= 0, got {level}")
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    modulus = prime**level
    if not 1 <= xi <= modulus:
        raise ParameterError(f"class {xi} outside [1, {modulus}]")
    if prime < k:
        return WellConditionedTuples(prime, level, xi, k, ())
    lifts = _lifts(prime, level, xi)
    out: list[tuple[int, ...]] = []

    def extend(partial: list[int], used: set[int]) -> None:
        if len(partial) == k:
            out.append(tuple(partial))
            return
        for lift in lifts:
            if lift not in used:
                partial.append(lift)
                used.add(lift)
                extend(partial, used)
                used.remove(lift)
                partial.pop()

    extend([], set())
    return WellConditionedTuples(prime, level, xi, k, tuple(out))


def scale_map(a: AmplitudeMap, c) -> AmplitudeMap:
    if c == 0:
        return AmplitudeMap({}, a.factor_count, a.radius, a.exponents)
    return AmplitudeMap(
        {key: v * c for key, v in a.entries.items()}, a.factor_count, a.radius, a.exponents
    )


def map_sum(maps, factor_count: int, radius: int, exponents) -> AmplitudeMap:
    out: dict = {}
    for m in maps:
        for key, v in m.entries.items():
            prev = out.get(key)
            out[key] = v if prev is None else prev + v
    for key in [kk for kk, v in out.items() if v == 0]:
        del out[key]
    return AmplitudeMap(out, factor_count, radius, tuple(exponents))


def conditioned_amplitude(
    w: Weights,
    prime: int,
    level: int,
    xi: int,
    k: int,
    entry_cap: int = ENTRY_CAP_DEFAULT,
) -> AmplitudeMap:
    """Unnormalized k-fold conditioned block at (level, xi).

    Sum over well-conditioned tuples of the convolution of the k
    class-restricted single-factor maps.  Since convolution commutes,
    the ordered-tuple sum equals k! times the sum over k-subsets of
    lifts; the normalizing 1/rho^k prefactors are NOT applied here (the
    mixed moments apply their even powers exactly).
    """
    es = normalize_exponents(k)
    _check_prime(prime)
    modulus = prime**level
    if not 1 <= xi <= modulus:
        raise ParameterError(f"class {xi} outside [1, {modulus}]")
    if prime < k:
        return AmplitudeMap({}, k, w.n_max, es)
    lift_maps = []
    for lift in _lifts(prime, level, xi):
        restricted = w.restrict(prime ** (level + 1), lift)
        if restricted.values:
            lift_maps.append(single_factor_map(restricted, es))
    terms = []
    for combo in combinations(range(len(lift_maps)), k):
        acc = identity_map(es, w.n_max)
        for i in combo:
            acc = convolve(acc, lift_maps[i], entry_cap)
        terms.append(acc)
    summed = map_sum(terms, k, w.n_max, es)
    return scale_map(summed, math.factorial(k))


# ---------------------------------------------------------------------------
# mixed moments


@dataclass(frozen=True)
class MixedMoment:
    kind: str  # "I" or "K"
    value: object  # exact Fraction (or float in complex mode)
    raw: object  # unnormalized L2 mass of the convolved map
    bracket: float | None  # value / anticipated order, when theta is given
    prime: int
    a: int
    b: int
    s: int  # v-block factor count (s = u*k for kind K)
    k: int
    xi: int | None  # None marks an aggregate over classes
    eta: int | None


def _bracket(value, x: int, theta, a: int, b: int, k: int, s: int) -> float | None:
    if theta is None:
        return None
    m = float(x) ** float(Fraction(theta))
    denom = (x / m**a) ** (k - k * (k + 1) / 2) * (x / m**b) ** s
    return float(value) / denom


def _zero_value(mode: str):
    return 0.0 if mode == MODE_COMPLEX else Fraction(0)


def _moment_common(
    w: Weights,
    prime: int,
    a: int,
    b: int,
    xi: int,
    eta: int,
    k: int,
    inner: AmplitudeMap,
    energy_power_b: int,
    s_label: int,
    kind: str,
    theta,
    entry_cap: int,
) -> MixedMoment:
    """Shared tail: convolve the conditioned block with `inner` and normalize.

    Normalization divides by (class-a energy)^k * (class-b energy)^power,
    i.e. the even rho powers of the two normalized blocks, exactly.
    """
    cond = conditioned_amplitude(w, prime, a, xi, k, entry_cap)
    energy_a = class_profile(w, prime, a).energy(xi)
    energy_b = class_profile(w, prime, b).energy(eta)
    if not cond.entries or not inner.entries or energy_a == 0 or energy_b == 0:
        zero = _zero_value(w.mode)
        return MixedMoment(kind, zero, zero, _bracket(zero, w.n_max, theta, a, b, k, s_label),
                           prime, a, b, s_label, k, xi, eta)
    conv = convolve(cond, inner, entry_cap)
    raw = conv.l2_mass()
    if w.mode == MODE_COMPLEX:
        value = float(raw) / (float(energy_a) ** k * float(energy_b) ** energy_power_b)
    else:
        value = Fraction(raw) / (Fraction(energy_a) ** k * Fraction(energy_b) ** energy_power_b)
    return MixedMoment(kind, value, raw, _bracket(value, w.n_max, theta, a, b, k, s_label),
                       prime, a, b, s_label, k, xi, eta)


def _validate_levels(a: int, b: int) -> None:
    if not 0 <= a < b:
        raise ParameterError(f"levels must satisfy 0 <= a < b, got a={a}, b={b}")


def mixed_moment_I(
    w: Weights,
    prime: int,
    a: int,
    b: int,
    xi: int,
    eta: int,
    s: int,
    k: int,
    theta=None,
    entry_cap: int = ENTRY_CAP_DEFAULT,
) -> MixedMoment:
    """Moment of the level-a conditioned block against a plain class block.

    value = (L2 mass of G_a(xi) * M_b(eta)^s) / (rho_a(xi)^2k rho_b(eta)^2s),
    where M_b is the single-factor map restricted to n = eta (mod p^b).
    """
    _validate_levels(a, b)
    _check_prime(prime)
    if s < 1:
        raise ParameterError(f"s must be >= 1, got {s}")
    mod_b = prime**b
    if not 1 <= eta <= mod_b:
        raise ParameterError(f"class {eta} outside [1, {mod_b}]")
    es = normalize_exponents(k)
    block = w.restrict(mod_b, eta)
    if block.values:
        inner = power(single_factor_map(block, es), s, entry_cap)
    else:
        inner = AmplitudeMap({}, s, w.n_max, es)
    return _moment_common(w, prime, a, b, xi, eta, k, inner, s, s, "I", theta, entry_cap)


def mixed_moment_K(
    w: Weights,
    prime: int,
    a: int,
    b: int,
    xi: int,
    eta: int,
    u: int,
    k: int,
    theta=None,
    entry_cap: int = ENTRY_CAP_DEFAULT,
) -> MixedMoment:
    """Moment of the level-a conditioned block against u conditioned b-blocks."""
    _validate_levels(a, b)
    _check_prime(prime)
    if u < 1:
        raise ParameterError(f"u must be >= 1, got {u}")
    mod_b = prime**b
    if not 1 <= eta <= mod_b:
        raise ParameterError(f"class {eta} outside [1, {mod_b}]")
    cond_b = conditioned_amplitude(w, prime, b, eta, k, entry_cap)
    if cond_b.entries:
        inner = power(cond_b, u, entry_cap)
    else:
        inner = AmplitudeMap({}, u * k, w.n_max, normalize_exponents(k))
    return _moment_common(w, prime, a, b, xi, eta, k, inner, u * k, u * k, "K", theta, entry_cap)


# ---------------------------------------------------------------------------
# aggregation over classes


def aggregate_mixed_moment(
    kind: str,
    w: Weights,
    prime: int,
    a: int,
    b: int,
    s_or_u: int,
    k: int,
    theta=None,
    entry_cap: int = ENTRY_CAP_DEFAULT,
) -> tuple[MixedMoment, list[MixedMoment]]:
    """Energy-weighted average over all class pairs (xi, eta).

    aggregate = rho_0(1)^-4 * sum_xi sum_eta e_a(xi) e_b(eta) value(xi, eta),
    with e_c the exact class energies.  Returns the aggregate and the
    per-class results (zero-energy classes are skipped as zero terms).
    """
    if kind not in ("I", "K"):
        raise ParameterError(f"kind must be 'I' or 'K', got {kind!r}")
    _validate_levels(a, b)
    _check_prime(prime)
    prof_a = class_profile(w, prime, a)
    prof_b = class_profile(w, prime, b)
    total = prof_a.total()  # equals rho_0(1)^2 by the partition identity
    per_class: list[MixedMoment] = []
    acc = _zero_value(w.mode)
    s_label = s_or_u if kind == "I" else s_or_u * k
    for xi in range(1, prime**a + 1):
        e_a = prof_a.energy(xi)
        if e_a == 0:
            continue
        for eta in range(1, prime**b + 1):
            e_b = prof_b.energy(eta)
            if e_b == 0:
                continue
            if kind == "I":
                mm = mixed_moment_I(w, prime, a, b, xi, eta, s_or_u, k, theta, entry_cap)
            else:
                mm = mixed_moment_K(w, prime, a, b, xi, eta, s_or_u, k, theta, entry_cap)
            per_class.append(mm)
            acc = acc + e_a * e_b * mm.value
    if total == 0:
        agg_value = _zero_value(w.mode)
    elif w.mode == MODE_COMPLEX:
        agg_value = float(acc) / float(total) ** 2
    else:
        agg_value = Fraction(acc) / Fraction(total) ** 2
    agg = MixedMoment(kind, agg_value, agg_value,
                      _bracket(agg_value, w.n_max, theta, a, b, k, s_label),
                      prime, a, b, s_label, k, None, None)
    return agg, per_class


# ---------------------------------------------------------------------------
# congruence solution boxes (exhaustive)


BOX_CAP_DEFAULT = 20_000_000


@dataclass(frozen=True)
class CongruenceBox:
    prime: int
    a: int
    b: int
    xi: int
    eta: int
    k: int
    target: tuple[int, ...]
    solutions: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class BoxAudit:
    prime: int
    a: int
    b: int
    k: int
    bound: int  # k! * p^(k(k-1)(a+b)/2)
    max_card: int
    passed: bool
    witness_xi: int
    witness_eta: int
    witness_target: tuple[int, ...]


def _box_grid(prime: int, a: int, b: int, xi: int, k: int, cap: int):
    """All z in [1, p^(kb)]^k passing the level-a lift condition, as columns."""
    mod_z = prime ** (k * b)
    total = mod_z**k
    if total > cap:
        raise ResourceError(f"box enumeration needs {total} tuples, cap is {cap}")
    axes = np.arange(1, mod_z + 1, dtype=np.int64)
    grids = np.meshgrid(*([axes] * k), indexing="ij")
    z = np.stack([g.reshape(-1) for g in grids])
    mod_a = prime**a
    mod_a1 = prime ** (a + 1)
    keep = np.ones(z.shape[1], dtype=bool)
    for i in range(k):
        keep &= (z[i] - xi) % mod_a == 0
    for i in range(k):
        for j in range(i + 1, k):
            keep &= (z[i] - z[j]) % mod_a1 != 0
    return z[:, keep]


def _box_keys(z: np.ndarray, prime: int, b: int, eta: int, k: int) -> np.ndarray:
    """Pack the congruence key (sum_i (z_i - eta)^j mod p^(jb), j = 1..k)."""
    packed = np.zeros(z.shape[1], dtype=np.int64)
    scale = 1
    shifted = z - eta
    for j in range(1, k + 1):
        mod_j = prime ** (j * b)
        comp = np.zeros(z.shape[1], dtype=np.int64)
        for i in range(k):
            comp += pow_mod_array(shifted[i], j, mod_j)
        comp %= mod_j
        if scale * mod_j >= (1 << 62):
            raise ResourceError("box key packing exceeds 62 bits")
        packed += scale * comp
        scale *= mod_j
    return packed


def pow_mod_array(base: np.ndarray, e: int, mod: int) -> np.ndarray:
    out = np.ones_like(base) % mod
    b = base % mod
    n = e
    while n:
        if n & 1:
            out = (out * b) % mod
        b = (b * b) % mod
        n >>= 1
    return out


def enumerate_congruence_box(
    prime: int,
    a: int,
    b: int,
    xi: int,
    eta: int,
    target: tuple[int, ...],
    k: int,
    cap: int = BOX_CAP_DEFAULT,
) -> CongruenceBox:
    """Exhaustively list z in [1, p^(kb)]^k solving the congruence system.

    Conditions: sum_i (z_i - eta)^j = target_j (mod p^(jb)) for j = 1..k,
    each z_i = xi (mod p^a), and the z_i pairwise distinct mod p^(a+1)
    (the level-a well-conditioned lift condition).
    """
    _check_prime(prime)
    _validate_levels(a, b)
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    if len(target) != k:
        raise ParameterError(f"target must have {k} components, got {len(target)}")
    if not 1 <= xi <= prime**a:
        raise ParameterError(f"class {xi} outside [1, {prime ** a}]")
    if not 1 <= eta <= prime**b:
        raise ParameterError(f"class {eta} outside [1, {prime ** b}]")
    z = _box_grid(prime, a, b, xi, k, cap)
    keys = _box_keys(z, prime, b, eta, k)
    want = 0
    scale = 1
    for j in range(1, k + 1):
        mod_j = prime ** (j * b)
        want += scale * (target[j - 1] % mod_j)
        scale *= mod_j
    hit = keys == want
    sols = tuple(sorted(tuple(int(v) for v in z[:, i]) for i in np.nonzero(hit)[0]))
    return CongruenceBox(prime, a, b, xi, eta, k, tuple(target), sols)


def box_cardinality_audit(
    prime: int,
    a: int,
    b: int,
    k: int,
    cap: int = BOX_CAP_DEFAULT,
) -> BoxAudit:
    """Max box cardinality over every target and class pair, vs the bound.

    The bound k! * p^(k(k-1)(a+b)/2) is checked exhaustively: for each
    (xi, eta) the packed congruence keys of all admissible z are bucket
    counted and the largest bucket recorded.
    """
    _check_prime(prime)
    _validate_levels(a, b)
    # k(k-1) is even, so the bound's exponent is integral
    bound = math.factorial(k) * prime ** ((k * (k - 1) * (a + b)) // 2)
    best = 0
    best_xi = 1
    best_eta = 1
    best_key = 0
    for xi in range(1, prime**a + 1):
        z = _box_grid(prime, a, b, xi, k, cap)
        if z.shape[1] == 0:
            continue
        for eta in range(1, prime**b + 1):
            keys = _box_keys(z, prime, b, eta, k)
            uniq, counts = np.unique(keys, return_counts=True)
            top = int(np.argmax(counts))
            if int(counts[top]) > best:
                best = int(counts[top])
                best_xi = xi
                best_eta = eta
                best_key = int(uniq[top])
    # unpack the witness key back into target components
    target = []
    rem = best_key
    for j in range(1, k + 1):
        mod_j = prime ** (j * b)
        target.append(rem % mod_j)
        rem //= mod_j
    return BoxAudit(prime, a, b, k, bound, best, best <= bound, best_xi, best_eta,
                    tuple(target))


# ---------------------------------------------------------------------------
# T-split of the mixed moment I


@dataclass(frozen=True)
class TSplit:
    t1: object
    t2: object
    total: object  # equals the I value; t1 + t2 == total exactly


def _pointwise_dot(a: AmplitudeMap, b: AmplitudeMap):
    """sum_key a[key] * conj(b[key]), exact in exact modes."""
    small, big = (a, b) if len(a.entries) <= len(b.entries) else (b, a)
    flip = small is not a
    acc = 0
    for key, v in small.entries.items():
        other = big.entries.get(key)
        if other is None:
            continue
        acc = acc + (conj_value(v) * other if flip else v * conj_value(other))
    return acc


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def audit_T_split(
    w: Weights,
    prime: int,
    a: int,
    b: int,
    xi: int,
    eta: int,
    s: int,
    k: int,
    entry_cap: int = ENTRY_CAP_DEFAULT,
) -> TSplit:
    """Split I(xi, eta) by whether >= 3 of the v-block variables share a
    congruence class mod p^(b+1).

    T1 collects the solutions whose v side has three variables in one
    class one level up; T2 is the rest.  Both are computed as exact
    cross-masses against the unrestricted v-block, and t1 + t2 == total
    is asserted, not assumed.
    """
    _validate_levels(a, b)
    _check_prime(prime)
    if s < 1:
        raise ParameterError(f"s must be >= 1, got {s}")
    es = normalize_exponents(k)
    mod_b = prime**b
    if not 1 <= eta <= mod_b:
        raise ParameterError(f"class {eta} outside [1, {mod_b}]")

    base = mixed_moment_I(w, prime, a, b, xi, eta, s, k, None, entry_cap)
    cond = conditioned_amplitude(w, prime, a, xi, k, entry_cap)
    energy_a = class_profile(w, prime, a).energy(xi)
    energy_b = class_profile(w, prime, b).energy(eta)
    if base.value == 0:
        return TSplit(base.value, base.value, base.value)

    # per-lift single-factor maps of the v block, classes mod p^(b+1)
    lift_maps = []
    for lift in _lifts(prime, b, eta):
        restricted = w.restrict(prime ** (b + 1), lift)
        lift_maps.append(single_factor_map(restricted, es) if restricted.values
                         else AmplitudeMap({}, 1, w.n_max, es))

    def pile(condition) -> AmplitudeMap:
        terms = []
        for comp in _compositions(s, prime):
            if not condition(max(comp)):
                continue
            coeff = math.factorial(s)
            acc = identity_map(es, w.n_max)
            dead = False
            for count, m in zip(comp, lift_maps):
                if count == 0:
                    continue
                coeff //= math.factorial(count)
                if not m.entries:
                    dead = True
                    break
                acc = convolve(acc, power(m, count, entry_cap), entry_cap)
            if dead:
                continue
            terms.append(scale_map(acc, coeff))
        return map_sum(terms, s, w.n_max, es)

    clustered = pile(lambda biggest: biggest >= 3)  # some class holds >= 3 of the v_i
    spread = pile(lambda biggest: biggest < 3)

    block = w.restrict(mod_b, eta)
    full = power(single_factor_map(block, es), s, entry_cap)

    left_full = convolve(cond, full, entry_cap)
    t1_raw = _pointwise_dot(convolve(cond, clustered, entry_cap), left_full)
    t2_raw = _pointwise_dot(convolve(cond, spread, entry_cap), left_full)

    if w.mode == MODE_COMPLEX:
        denom = float(energy_a) ** k * float(energy_b) ** s
        t1 = float(t1_raw.real if isinstance(t1_raw, complex) else t1_raw) / denom
        t2 = float(t2_raw.real if isinstance(t2_raw, complex) else t2_raw) / denom
        assert abs((t1 + t2) - base.value) <= 1e-9 * max(1.0, abs(base.value))
    else:
        denom = Fraction(energy_a) ** k * Fraction(energy_b) ** s
        t1 = Fraction(t1_raw) / denom
        t2 = Fraction(t2_raw) / denom
        assert t1 + t2 == base.value
    return TSplit(t1, t2, base.value)
