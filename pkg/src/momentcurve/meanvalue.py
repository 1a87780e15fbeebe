"""Even moments of weighted power-sum exponential sums, computed exactly.

The 2s-th moment of f(a) = sum_n w_n e(a_1 n^{k_1} + ... + a_t n^{k_t})
over the torus equals, by orthogonality, the weighted count of solutions

    sum_i x_i^{k_j} = sum_i y_i^{k_j}   (1 <= j <= t, x_i, y_i in [-N, N])

with each solution weighed by prod w_{x_i} * conj(w_{y_i}).  We compute
it on the Fourier side: build the sparse map from power-sum key vectors
to total amplitude for one factor, raise it to the s-th convolution
power, and sum |amplitude|^2.  Exact modes stay exact throughout.

A brute-force path enumerates tuple pairs directly and exists purely to
cross-examine the convolution path; the two share nothing but the key
definition.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Iterable, Mapping

import numpy as np

from . import rowconv
from .errors import ParameterError, ResourceError
from .weights import MODE_COMPLEX, MODE_INTEGER, Weights, rho

ENTRY_CAP_DEFAULT = 50_000_000
BRUTE_CAP_DEFAULT = 100_000_000


def normalize_exponents(es_or_k) -> tuple[int, ...]:
    """Accept an int k (meaning 1..k) or an increasing tuple of exponents."""
    if isinstance(es_or_k, bool):
        raise ParameterError("exponent set cannot be a boolean")
    if isinstance(es_or_k, int):
        if es_or_k < 1:
            raise ParameterError(f"k must be >= 1, got {es_or_k}")
        return tuple(range(1, es_or_k + 1))
    es = tuple(int(e) for e in es_or_k)
    if not es:
        raise ParameterError("exponent set must be nonempty")
    if es[0] < 1 or any(a >= b for a, b in zip(es, es[1:])):
        raise ParameterError(f"exponents must be strictly increasing positive, got {es}")
    return es


def conj_value(v):
    return v.conjugate() if isinstance(v, complex) else v


def abs_squared(v):
    if isinstance(v, complex):
        return v.real * v.real + v.imag * v.imag
    return v * v


@dataclass(frozen=True)
class AmplitudeMap:
    """Sparse map from power-sum key vectors to amplitudes."""

    entries: Mapping[tuple[int, ...], object]
    factor_count: int
    radius: int
    exponents: tuple[int, ...]

    def total_mass(self):
        return sum(self.entries.values())

    def l2_mass(self):
        vals = list(self.entries.values())
        if vals and isinstance(vals[0], complex):
            return math.fsum(v.real * v.real + v.imag * v.imag for v in vals)
        return sum(v * v for v in vals)


def single_factor_map(w: Weights, es_or_k) -> AmplitudeMap:
    """Key (n^{k_1}, ..., n^{k_t}) -> w_n, amplitudes added on collisions."""
    es = normalize_exponents(es_or_k)
    entries: dict[tuple[int, ...], object] = {}
    for n, v in w.values.items():
        key = tuple(n**e for e in es)
        if key in entries:
            entries[key] = entries[key] + v
        else:
            entries[key] = v
    for key in [k for k, v in entries.items() if v == 0]:
        del entries[key]
    return AmplitudeMap(entries, 1, w.n_max, es)


def identity_map(es_or_k, radius: int) -> AmplitudeMap:
    es = normalize_exponents(es_or_k)
    return AmplitudeMap({(0,) * len(es): 1}, 0, radius, es)


def reflect(a: AmplitudeMap) -> AmplitudeMap:
    """Key negation plus conjugation: the map of the conjugated factor."""
    entries = {tuple(-c for c in key): conj_value(v) for key, v in a.entries.items()}
    return AmplitudeMap(entries, a.factor_count, a.radius, a.exponents)


def convolve(a: AmplitudeMap, b: AmplitudeMap, entry_cap: int = ENTRY_CAP_DEFAULT) -> AmplitudeMap:
    if a.exponents != b.exponents:
        raise ParameterError(f"exponent sets differ: {a.exponents} vs {b.exponents}")
    if a.radius != b.radius:
        raise ParameterError(f"radii differ: {a.radius} vs {b.radius}")
    small, big = (a, b) if len(a.entries) <= len(b.entries) else (b, a)
    out: dict[tuple[int, ...], object] = {}
    get = out.get
    big_items = list(big.entries.items())
    for ks, vs in small.entries.items():
        for kb, vb in big_items:
            key = tuple(x + y for x, y in zip(ks, kb))
            prev = get(key)
            out[key] = vs * vb if prev is None else prev + vs * vb
        if len(out) > entry_cap:
            raise ResourceError(
                f"convolution exceeded entry cap {entry_cap} "
                f"(at least {len(out)} keys from {len(a.entries)}x{len(b.entries)})"
            )
    for key in [k for k, v in out.items() if v == 0]:
        del out[key]
    return AmplitudeMap(out, a.factor_count + b.factor_count, a.radius, a.exponents)


def power(a: AmplitudeMap, s: int, entry_cap: int = ENTRY_CAP_DEFAULT) -> AmplitudeMap:
    """s-fold convolution power by square-and-multiply."""
    if s < 1:
        raise ParameterError(f"power needs s >= 1, got {s}")
    result: AmplitudeMap | None = None
    base = a
    e = s
    while True:
        if e & 1:
            result = base if result is None else convolve(result, base, entry_cap)
        e >>= 1
        if e == 0:
            break
        base = convolve(base, base, entry_cap)
    assert result is not None
    return result


@dataclass(frozen=True)
class MeanValueResult:
    raw_moment: object  # int | Fraction | float
    normalized: object  # Fraction | float
    s: int
    k: int
    exponents: tuple[int, ...]
    n_max: int
    distinct_keys: int
    mode: str
    strategy: str


def _normalize(raw, rho_squared, s: int, mode: str):
    if mode == MODE_COMPLEX:
        return float(raw) / float(rho_squared) ** s
    return Fraction(raw) / Fraction(rho_squared) ** s


def _result(w: Weights, s: int, es: tuple[int, ...], raw, distinct: int, strategy: str) -> MeanValueResult:
    r2 = rho(w).squared
    return MeanValueResult(
        raw_moment=raw,
        normalized=_normalize(raw, r2, s, w.mode),
        s=s,
        k=es[-1],
        exponents=es,
        n_max=w.n_max,
        distinct_keys=distinct,
        mode=w.mode,
        strategy=strategy,
    )


def _map_raw(w: Weights, s: int, es: tuple[int, ...], entry_cap: int):
    amap = power(single_factor_map(w, es), s, entry_cap)
    if w.mode == MODE_COMPLEX:
        raw = math.fsum(abs_squared(v) for v in amap.entries.values())
    else:
        raw = sum(abs_squared(v) for v in amap.entries.values())
    return raw, len(amap.entries)


def _dense_applicable(w: Weights, es: tuple[int, ...]) -> bool:
    return es == (1, 2) and w.mode == MODE_INTEGER


_RESULT_CACHE: dict = {}


def mean_value(
    w: Weights,
    s: int,
    es_or_k,
    strategy: str = "auto",
    entry_cap: int = ENTRY_CAP_DEFAULT,
    cell_cap: int = rowconv.DEFAULT_CELL_CAP,
) -> MeanValueResult:
    """2s-th moment of the weighted exponential sum; exact in exact modes.

    strategy: "auto" picks the dense quadratic engine when it applies and
    the radius is large enough to matter, else the sparse map path; "map"
    and "dense" force a path ("dense" only exists for exponents {1, 2}
    with integer weights).  Results are memoized per process: sweeps that
    revisit the same (weights, s, exponents) pay for the moment once.
    """
    es = normalize_exponents(es_or_k)
    if s < 1:
        raise ParameterError(f"s must be >= 1, got {s}")
    if strategy not in ("auto", "map", "dense"):
        raise ParameterError(f"unknown strategy {strategy!r}")

    use_dense = strategy == "dense" or (
        strategy == "auto" and _dense_applicable(w, es) and s >= 2 and w.n_max >= 24
    )
    if use_dense and not _dense_applicable(w, es):
        raise ParameterError(
            "dense strategy requires exponents (1, 2) and integer weights"
        )
    cache_key = (
        w.n_max, w.mode, tuple(sorted(w.values.items())), s, es,
        "dense" if use_dense else "map",
    )
    cached = _RESULT_CACHE.get(cache_key)
    if cached is not None:
        return cached

    if use_dense:
        vals = {n: int(v) for n, v in w.values.items()}
        raw, distinct = rowconv.quadratic_mean_value(vals, w.n_max, s, cell_cap)
        out = _result(w, s, es, raw, distinct, "dense")
    else:
        raw, distinct = _map_raw(w, s, es, entry_cap)
        out = _result(w, s, es, raw, distinct, "map")
    _RESULT_CACHE[cache_key] = out
    return out


# ---------------------------------------------------------------------------
# brute-force oracle


def _support_tuples(sup: tuple[int, ...], s: int) -> np.ndarray:
    """All s-tuples over the support as an (s, M) int64 array."""
    grids = np.meshgrid(*([np.array(sup, dtype=np.int64)] * s), indexing="ij")
    return np.stack([g.reshape(-1) for g in grids])


def _pack_keys(tuples: np.ndarray, es: tuple[int, ...], s: int, n_max: int) -> np.ndarray:
    """Power-sum vectors packed into single int64 values (mixed radix)."""
    comps = [tuples.astype(np.int64) ** e for e in es]
    sums = [c.sum(axis=0) for c in comps]
    packed = np.zeros(tuples.shape[1], dtype=np.int64)
    scale = 1
    for e, vec in zip(es, sums):
        base = 2 * s * n_max**e + 1
        if scale * base >= (1 << 62):
            raise ResourceError("brute-force key packing exceeds 62 bits")
        packed = packed + scale * vec
        scale *= base
    return packed


def brute_force_mean_value(
    w: Weights,
    s: int,
    es_or_k,
    enumeration_cap: int = BRUTE_CAP_DEFAULT,
) -> MeanValueResult:
    """Oracle: enumerate all pairs of s-tuples and test key equality.

    Wholly independent of the convolution engine; used to certify it.
    """
    es = normalize_exponents(es_or_k)
    if s < 1:
        raise ParameterError(f"s must be >= 1, got {s}")
    total = (2 * w.n_max + 1) ** (2 * s)
    if total > enumeration_cap:
        raise ResourceError(
            f"brute force needs {total} tuple pairs, cap is {enumeration_cap}"
        )
    sup = w.support
    if not sup:
        return _result(w, s, es, 0 if w.mode != MODE_COMPLEX else 0.0, 0, "brute")

    tuples = _support_tuples(sup, s)
    keys = _pack_keys(tuples, es, s, w.n_max)
    m = keys.size

    # exact per-tuple amplitude products, indexed like the columns
    amps = []
    for col in range(m):
        prod = w.values[int(tuples[0, col])]
        for row in range(1, s):
            prod = prod * w.values[int(tuples[row, col])]
        amps.append(prod)

    # walk all m^2 pairs in row blocks; exact accumulation on the matches
    if w.mode == MODE_COMPLEX:
        terms = []
        block = max(1, (4 << 20) // max(m, 1))
        for i0 in range(0, m, block):
            eq = np.equal.outer(keys[i0 : i0 + block], keys)
            for di, j in zip(*np.nonzero(eq)):
                terms.append(amps[i0 + int(di)] * conj_value(amps[int(j)]))
        raw = complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))
        assert abs(raw.imag) <= 1e-9 * max(1.0, abs(raw.real))
        raw = raw.real
    else:
        raw = 0
        block = max(1, (4 << 20) // max(m, 1))
        for i0 in range(0, m, block):
            eq = np.equal.outer(keys[i0 : i0 + block], keys)
            for di, j in zip(*np.nonzero(eq)):
                raw = raw + amps[i0 + int(di)] * amps[int(j)]

    distinct = int(np.unique(keys).size)
    return _result(w, s, es, raw, distinct, "brute")


# ---------------------------------------------------------------------------
# certified lower bounds and the small-s regime


@dataclass(frozen=True)
class LowerBoundWitness:
    diagonal_count: int
    box_bound: int


def lower_bound_witness(n_max: int, s: int, k: int) -> LowerBoundWitness:
    """Two certified lower bounds for the unit-weight count J_{s,k}(N).

    diagonal_count: the x = y solutions, (2N+1)^s of them.
    box_bound: pigeonhole over the value box; (2N+1)^{2s} tuples land in
    at most prod_j (2sN^j + 1) key vectors, so some key holds at least
    the quotient, and Cauchy-Schwarz turns that into a count bound.
    """
    if s < 1 or k < 1:
        raise ParameterError("s and k must be >= 1")
    if n_max < 0:
        raise ParameterError("N must be >= 0")
    diagonal = (2 * n_max + 1) ** s
    box = 1
    for j in range(1, k + 1):
        box *= 2 * s * n_max**j + 1
    return LowerBoundWitness(diagonal, (2 * n_max + 1) ** (2 * s) // box)


def _permutation_only_count(w: Weights, s: int):
    """Sum over multisets of |ordering-weighted amplitude|^2, exactly."""
    sup = w.support
    total = 0
    s_fact = math.factorial(s)
    for combo in combinations_with_replacement(sup, s):
        orderings = s_fact
        run = 1
        prev = None
        for x in combo:
            run = run + 1 if x == prev else 1
            orderings //= run
            prev = x
        prod = 1
        for x in combo:
            prod = prod * w.values[x]
        total = total + abs_squared(orderings * prod)
    return total


def newton_regime_check(w: Weights, s: int, k: int) -> bool:
    """True iff every attained key comes from a single multiset of inputs.

    For s <= k the full system forces {x_i} = {y_i}, so the 2s-th moment
    must equal the permutation-only count; this checks that equality.
    """
    if s > k:
        raise ParameterError(f"regime check needs s <= k, got s={s}, k={k}")
    res = mean_value(w, s, k)
    perm = _permutation_only_count(w, s)
    if w.mode == MODE_COMPLEX:
        return bool(
            abs(res.raw_moment - perm) <= 1e-9 * max(1.0, abs(perm))
        )
    return res.raw_moment == perm
