"""Hardy-Littlewood apparatus for the degree-k moment curve.

Unweighted exponential sums F(a; X) = sum_{|n|<=X} e(a_1 n + ... + a_k n^k),
their rational-point complete sums, the major/minor arc dissection at
cutoff X^(1/2k), oscillatory integrals, the major-arc approximant
V = q^{-1} S(q, a) I(a - a/q; X), and the factorized major-arc moment.

Arc membership and disjointness are decided in exact rational arithmetic:
raising |distance| and the box radii X^(1/2k) X^{-j} to the 2k-th power
clears the irrational root, so boundary decisions never depend on float
rounding.  Exponential-sum phases are reduced mod 1 exactly before any
trigonometry, so magnitudes do not drift even at X = 10^5.
"""

from __future__ import annotations

import cmath
import heapq
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import NumericError, ParameterError, ResourceError
from .rng import SplitMix64

TWO_PI = 2.0 * math.pi


def _as_fractions(alpha) -> tuple[Fraction, ...]:
    # Fraction(float) is the exact binary value, so float inputs get a
    # well-defined arc assignment instead of a rounding-dependent one.
    return tuple(Fraction(a) for a in alpha)


# ---------------------------------------------------------------------------
# exponential sums


def weyl_sum(alpha, x) -> complex:
    """F(alpha; X) = sum over |n| <= X of e(alpha_1 n + ... + alpha_k n^k).

    Phases are reduced mod 1 in exact rational arithmetic before the
    complex exponential, and real/imaginary parts are fsum-compensated.
    """
    if x < 1:
        raise ParameterError(f"X must be >= 1, got {x}")
    xf = math.floor(x)
    alpha = _as_fractions(alpha)
    reals: list[float] = []
    imags: list[float] = []
    for n in range(-xf, xf + 1):
        phase = Fraction(0)
        pw = 1
        for a in alpha:
            pw *= n
            phase += a * pw
        frac = phase - (phase.numerator // phase.denominator)  # in [0, 1)
        ang = TWO_PI * float(frac)
        reals.append(math.cos(ang))
        imags.append(math.sin(ang))
    return complex(math.fsum(reals), math.fsum(imags))


def _rational_weyl_abs(points: list[tuple[Fraction, ...]], x: int) -> np.ndarray:
    """|F| at many rational points, vectorized over n per point."""
    n = np.arange(-x, x + 1, dtype=np.int64)
    out = np.empty(len(points), dtype=np.float64)
    for idx, alpha in enumerate(points):
        den = 1
        for a in alpha:
            den = den * a.denominator // math.gcd(den, a.denominator)
        # den^2 must stay inside int64 for the modular products below
        if den > (1 << 31):
            out[idx] = abs(weyl_sum(alpha, x))
            continue
        acc = np.zeros(n.size, dtype=np.int64)
        pw = np.ones(n.size, dtype=np.int64)
        nm = n % den
        for a in alpha:
            pw = (pw * nm) % den
            coef = (a.numerator % den) * (den // a.denominator) % den
            acc = (acc + coef * pw) % den
        ang = acc.astype(np.float64) * (TWO_PI / den)
        out[idx] = abs(complex(np.cos(ang).sum(), np.sin(ang).sum()))
    return out


def complete_sum(q: int, a) -> complex:
    """S(q, a) = sum_{r=1}^{q} e((a_1 r + ... + a_k r^k) / q).

    Angles are the exact rationals P(r)/q evaluated through a unit-root
    table, so no drift accumulates; residues outside [1, q] are accepted
    (S is invariant under a_j -> a_j + q).
    """
    if q < 1:
        raise ParameterError(f"q must be >= 1, got {q}")
    a = tuple(int(v) for v in a)
    roots = [cmath.exp(2j * math.pi * t / q) for t in range(q)]
    reals: list[float] = []
    imags: list[float] = []
    for r in range(1, q + 1):
        acc = 0
        for j, coef in enumerate(a, start=1):
            acc = (acc + coef * pow(r, j, q)) % q
        z = roots[acc]
        reals.append(z.real)
        imags.append(z.imag)
    return complex(math.fsum(reals), math.fsum(imags))


def complete_sum_table(q: int, k: int) -> np.ndarray:
    """S(q, a) for every a in [0, q)^k at once (index a_j = 0 stands for q).

    Built as the k-dimensional inverse FFT of the counting array of
    residue vectors (r, r^2, ..., r^k) mod q, scaled by q^k.
    """
    if q < 1:
        raise ParameterError(f"q must be >= 1, got {q}")
    if q**k > 64_000_000:
        raise ResourceError(f"complete-sum table size q^k = {q ** k} too large")
    counts = np.zeros((q,) * k, dtype=np.float64)
    for r in range(1, q + 1):
        idx = tuple(pow(r, j, q) for j in range(1, k + 1))
        counts[idx] += 1.0
    return np.fft.ifftn(counts) * float(q**k)


def crt_split_residues(q1: int, q2: int, a) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Residue vectors a', a'' with S(q1 q2, a) = S(q1, a') S(q2, a'').

    From the substitution r = r2 q1 + r1 q2 (a bijection mod q1 q2 for
    coprime moduli): a'_j = a_j q2^(j-1) mod q1, a''_j = a_j q1^(j-1)
    mod q2, with residue 0 reported as the modulus.
    """
    if math.gcd(q1, q2) != 1:
        raise ParameterError(f"moduli must be coprime, got {q1}, {q2}")
    a = tuple(int(v) for v in a)
    first = tuple((v * pow(q2, j, q1)) % q1 or q1 for j, v in enumerate(a))
    second = tuple((v * pow(q1, j, q2)) % q2 or q2 for j, v in enumerate(a))
    return first, second


# ---------------------------------------------------------------------------
# arc dissection


@dataclass(frozen=True)
class ArcDecomposition:
    """Major-arc list at scale X: centers a/q with q at most X^(1/2k)."""

    x: int
    k: int
    arcs: tuple[tuple[int, tuple[int, ...]], ...]

    @property
    def cutoff(self) -> float:
        """The dissection parameter X^(1/2k): q range and radius scale."""
        return float(self.x) ** (1.0 / (2 * self.k))


@dataclass(frozen=True)
class MajorArcPoint:
    """A point together with its owning arc and offset from the center."""

    alpha: tuple[Fraction, ...]
    q: int
    a: tuple[int, ...]
    beta: tuple[Fraction, ...]


def _q_limit(x: int, k: int) -> int:
    q = 1
    while (q + 1) ** (2 * k) <= x:
        q += 1
    return q


def _torus_distance(d: Fraction) -> Fraction:
    d = d - (d.numerator // d.denominator)  # into [0, 1)
    return min(d, 1 - d)


def _within_radius(dist: Fraction, x: int, k: int, j: int) -> bool:
    # dist <= X^(1/2k) X^{-j}, decided exactly via the 2k-th power
    return dist ** (2 * k) <= Fraction(x, x ** (2 * k * j))


def arc_decomposition(x: int, k: int, check_disjoint: bool = True) -> ArcDecomposition:
    """All major arcs (q, a): q^(2k) <= X, a in [1,q]^k, gcd(q, a) = 1.

    Arcs are listed by increasing q, then lexicographic a.  Pairwise box
    disjointness is verified exactly unless switched off.
    """
    if x < 2:
        raise ParameterError(f"X must be >= 2, got {x}")
    if k < 1:
        raise ParameterError(f"k must be >= 1, got {k}")
    qmax = _q_limit(x, k)
    arcs: list[tuple[int, tuple[int, ...]]] = []
    for q in range(1, qmax + 1):
        idx = [1] * k
        while True:
            a = tuple(idx)
            g = q
            for v in a:
                g = math.gcd(g, v)
            if g == 1:
                arcs.append((q, a))
            pos = k - 1
            while pos >= 0:
                idx[pos] += 1
                if idx[pos] <= q:
                    break
                idx[pos] = 1
                pos -= 1
            if pos < 0:
                break
    if check_disjoint:
        _assert_disjoint(arcs, x, k)
    return ArcDecomposition(x, k, tuple(arcs))


def _assert_disjoint(arcs, x: int, k: int) -> None:
    centers = [tuple(Fraction(aj, q) for aj in a) for q, a in arcs]
    for i in range(len(arcs)):
        for j in range(i + 1, len(arcs)):
            overlap = True
            for t in range(1, k + 1):
                d = _torus_distance(centers[i][t - 1] - centers[j][t - 1])
                # boxes meet in coordinate t iff d <= 2 X^(1/2k) X^{-t}
                if d ** (2 * k) > Fraction(4**k * x, x ** (2 * k * t)):
                    overlap = False
                    break
            if overlap:
                raise ParameterError(
                    f"arcs overlap: q={arcs[i][0]} a={arcs[i][1]} vs "
                    f"q={arcs[j][0]} a={arcs[j][1]} at X={x}, k={k}"
                )


def locate_arc(x: int, k: int, alpha) -> MajorArcPoint | None:
    """The major arc owning alpha, or None when alpha is minor.

    Boundary ties resolve to the smallest q, then lexicographically
    smallest a.  Membership is exact for rational alpha; floats are
    first converted to their exact binary fractions.
    """
    alpha = _as_fractions(alpha)
    qmax = _q_limit(x, k)
    for q in range(1, qmax + 1):
        # only the integers nearest to alpha_j q can satisfy the radius
        cands: list[list[int]] = []
        for aj in alpha:
            lo = math.floor(aj * q)
            options = set()
            for r in (lo, lo + 1):
                rr = r % q
                options.add(rr if rr >= 1 else q)
            cands.append(sorted(options))
        combos: list[tuple[int, ...]] = [()]
        for options in cands:
            combos = [c + (o,) for c in combos for o in options]
        for a in sorted(combos):
            g = q
            for v in a:
                g = math.gcd(g, v)
            if g != 1:
                continue
            beta = []
            ok = True
            for j in range(1, k + 1):
                d = alpha[j - 1] - Fraction(a[j - 1], q)
                d = d - round(d)  # nearest torus representative
                if not _within_radius(abs(d), x, k, j):
                    ok = False
                    break
                beta.append(d)
            if ok:
                return MajorArcPoint(alpha, q, a, tuple(beta))
    return None


# ---------------------------------------------------------------------------
# oscillatory integrals


_GL_CACHE: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _gl_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    if n not in _GL_CACHE:
        _GL_CACHE[n] = np.polynomial.legendre.leggauss(n)
    return _GL_CACHE[n]


def _phase_poly(beta, g: np.ndarray) -> np.ndarray:
    acc = np.zeros_like(g)
    pw = np.ones_like(g)
    for b in beta:
        pw = pw * g
        acc = acc + b * pw
    return acc


def _panel_value(beta, lo: float, hi: float, n: int) -> complex:
    xs, ws = _gl_nodes(n)
    mid = 0.5 * (lo + hi)
    half = 0.5 * (hi - lo)
    ph = TWO_PI * _phase_poly(beta, mid + half * xs)
    return complex(half * np.sum(ws * (np.cos(ph) + 1j * np.sin(ph))))


def oscillatory_integral(beta, x, tol: float = 1e-10, max_panels: int = 4096) -> complex:
    """I(beta; X) = integral over [-X, X] of e(beta_1 g + ... + beta_k g^k).

    Adaptive Gauss-Legendre bisection (16- vs 32-node panel error);
    raises a numeric error carrying the achieved estimate when the panel
    budget cannot meet tol.
    """
    if tol <= 0:
        raise ParameterError(f"tol must be positive, got {tol}")
    beta = tuple(float(b) for b in beta)
    xf = float(x)
    coarse = _panel_value(beta, -xf, xf, 16)
    fine = _panel_value(beta, -xf, xf, 32)
    heap = [(-abs(fine - coarse), -xf, xf, fine)]
    total_err = abs(fine - coarse)
    panels = 1
    while total_err > tol and panels < max_panels:
        neg_err, lo, hi, _ = heapq.heappop(heap)
        total_err += neg_err  # remove this panel's contribution
        mid = 0.5 * (lo + hi)
        for a, b in ((lo, mid), (mid, hi)):
            c = _panel_value(beta, a, b, 16)
            f = _panel_value(beta, a, b, 32)
            heapq.heappush(heap, (-abs(f - c), a, b, f))
            total_err += abs(f - c)
        panels += 1
    result = complex(sum(item[3] for item in heap))
    if total_err > tol:
        raise NumericError(
            f"oscillatory integral stalled at error {total_err:.3e} "
            f"after {panels} panels (tol {tol:.1e})",
            achieved=total_err,
        )
    return result


# ---------------------------------------------------------------------------
# the major-arc approximant


def major_arc_approximant(alpha, decomposition: ArcDecomposition, x=None,
                          tol: float = 1e-10) -> complex:
    """V(alpha) = q^{-1} S(q, a) I(alpha - a/q; X) on its arc, else 0."""
    if x is None:
        x = decomposition.x
    point = locate_arc(decomposition.x, decomposition.k, alpha)
    if point is None:
        return 0j
    beta = tuple(float(b) for b in point.beta)
    return complete_sum(point.q, point.a) / point.q * oscillatory_integral(beta, x, tol)


# ---------------------------------------------------------------------------
# minor-arc supremum sampling


@dataclass(frozen=True)
class MinorArcSample:
    x: int
    k: int
    seed: int
    points_tested: int
    points_kept: int
    max_abs: float
    argmax: tuple[Fraction, ...]


_HALTON_BASES = (2, 3, 5, 7)


def _halton_fraction(index: int, base: int) -> Fraction:
    num, den = 0, 1
    i = index
    while i > 0:
        num = num * base + (i % base)
        den *= base
        i //= base
    return Fraction(num, den)


def minor_arc_sup_sample(x: int, k: int, grid_density: int, seed: int) -> MinorArcSample:
    """Max |F| over a deterministic low-discrepancy minor-arc sample.

    Halton points (bases 2, 3, 5, ...) with a seeded rational shift;
    each is tested exactly against major-arc membership and kept only if
    it fails.  Empirical evidence about the minor-arc sup, not a proof.
    """
    if grid_density < 1:
        raise ParameterError(f"grid_density must be >= 1, got {grid_density}")
    if x < 2:
        raise ParameterError(f"X must be >= 2, got {x}")
    if not 1 <= k <= len(_HALTON_BASES):
        raise ParameterError(f"k must be in [1, {len(_HALTON_BASES)}], got {k}")
    gen = SplitMix64(seed)
    shift = tuple(Fraction(gen.next_below(1 << 16), 1 << 16) for _ in range(k))
    kept: list[tuple[Fraction, ...]] = []
    tested = 0
    index = 1
    while len(kept) < grid_density and tested < 64 * grid_density:
        pt = tuple(
            (_halton_fraction(index, base) + sh) % 1
            for base, sh in zip(_HALTON_BASES, shift)
        )
        index += 1
        tested += 1
        if locate_arc(x, k, pt) is None:
            kept.append(pt)
    if not kept:
        raise ResourceError(f"no minor-arc point found among {tested} samples")
    mags = _rational_weyl_abs(kept, x)
    best = int(np.argmax(mags))
    return MinorArcSample(x, k, seed, tested, len(kept), float(mags[best]), kept[best])


# ---------------------------------------------------------------------------
# singular series and the major-arc moment


@dataclass(frozen=True)
class SingularSeries:
    k: int
    u: int
    q_max: int
    value: float
    per_q: tuple[float, ...]  # contribution of q = 1, 2, ..., q_max


def singular_series(k: int, u: int, q_max: int) -> SingularSeries:
    """sum_{q <= q_max} sum'_a |q^{-1} S(q, a)|^u over primitive residues.

    The inner sum runs over a in [1, q]^k with gcd(q, a_1, ..., a_k) = 1.
    Partial sums are increasing; whether they stabilize depends on u.
    """
    if q_max < 1:
        raise ParameterError(f"q_max must be >= 1, got {q_max}")
    if k < 1 or u < 1:
        raise ParameterError(f"k and u must be >= 1, got k={k}, u={u}")
    per_q = []
    for q in range(1, q_max + 1):
        table = np.abs(complete_sum_table(q, k)) / q
        vals = (table[_primitive_mask(q, k)] ** u).ravel()
        per_q.append(float(np.sum(np.sort(vals))))
    return SingularSeries(k, u, q_max, math.fsum(per_q), tuple(per_q))


def _primitive_mask(q: int, k: int) -> np.ndarray:
    grids = np.meshgrid(*([np.arange(q)] * k), indexing="ij")
    g = np.full((q,) * k, q, dtype=np.int64)
    for comp in grids:
        g = np.gcd(g, comp)  # index 0 stands for a_j = q, and gcd(q, 0) = q
    return g == 1


@dataclass(frozen=True)
class MajorArcMoment:
    """Integral of |V|^u over the major arcs, with its exact factorization.

    On each arc, |V(alpha)|^u = |S(q,a)/q|^u |I(beta; X)|^u, and every
    arc shares one beta box, so per-arc integrals are |S/q|^u times a
    common box integral.  value sums the per-arc quadratures in arc
    order; singular * arc_integral re-derives it as a cross-check.
    """

    x: int
    k: int
    u: int
    q_max: int
    singular: float  # partial singular series over q <= X^(1/2k)
    arc_integral: float  # common box integral of |I(beta; X)|^u
    per_arc: tuple[tuple[int, tuple[int, ...], float], ...]
    value: float

    @property
    def reference_power(self) -> float:
        return float(self.x) ** (self.u - self.k * (self.k + 1) / 2)


def _unit_profile_abs(v: np.ndarray, k: int, cutoff: float) -> np.ndarray:
    """|Ibar(v)| for rows v, where Ibar = int_{-1}^{1} e(v . (t, ..., t^k)) dt.

    Composite Gauss-Legendre with panel count scaled to the phase range,
    evaluated in row chunks to bound memory.
    """
    panels = max(2, int(math.ceil(cutoff / 2.5)))
    xs, ws = _gl_nodes(32)
    edges = np.linspace(-1.0, 1.0, panels + 1)
    mids = 0.5 * (edges[:-1] + edges[1:])
    half = 0.5 * (edges[1] - edges[0])
    t = (mids[:, None] + half * xs[None, :]).ravel()
    wt = np.tile(half * ws, panels)
    powers = np.empty((k, t.size))
    pw = np.ones_like(t)
    for j in range(k):
        pw = pw * t
        powers[j] = pw
    out = np.empty(v.shape[0])
    step = max(1, 8_000_000 // t.size)
    for lo in range(0, v.shape[0], step):
        ph = TWO_PI * (v[lo : lo + step] @ powers)
        out[lo : lo + step] = np.abs((np.cos(ph) + 1j * np.sin(ph)) @ wt)
    return out


def _box_integral(cutoff: float, k: int, u: int, tol: float, x: int,
                  max_level: int = 6) -> float:
    """Integral of |I(beta; X)|^u over the common box prod [-R_j, R_j].

    Substituting beta_j = v_j X^{-j} turns this into
    X^{u - k(k+1)/2} int_{[-cutoff, cutoff]^k} |Ibar(v)|^u dv, evaluated
    by tensor Gauss-Legendre panels refined until two successive levels
    agree to tol.
    """
    prev = None
    for level in range(max_level):
        panels = 2 ** (level + 2)
        xs, ws = _gl_nodes(12)
        edges = np.linspace(-cutoff, cutoff, panels + 1)
        mids = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * (edges[1] - edges[0])
        axis_nodes = (mids[:, None] + half * xs[None, :]).ravel()
        axis_wts = np.tile(half * ws, panels)
        grids = np.meshgrid(*([axis_nodes] * k), indexing="ij")
        v = np.stack([g.ravel() for g in grids], axis=1)
        wt = np.ones(v.shape[0])
        for g in np.meshgrid(*([axis_wts] * k), indexing="ij"):
            wt = wt * g.ravel()
        vals = _unit_profile_abs(v, k, cutoff) ** u
        total = float(np.sum(np.sort(wt * vals)))
        if prev is not None and abs(total - prev) <= tol * max(abs(total), 1e-30):
            return total * float(x) ** (u - k * (k + 1) / 2)
        prev = total
    raise NumericError(
        f"major-arc box integral did not stabilize to {tol:.1e}",
        achieved=prev,
    )


def major_arc_moment(x: int, k: int, u: int, tol: float = 1e-6) -> MajorArcMoment:
    """Integral of |V|^u over all major arcs at scale X.

    Per-arc quadratures |S(q,a)/q|^u * B are listed and summed in arc
    order; B is the common box integral.  The report also carries the
    factorized form (singular-series partial sum times B), which must
    agree with the arc-order sum up to float roundoff.
    """
    if not 1 <= k <= 3:
        raise ParameterError(f"quadrature dimension limited to k <= 3, got k={k}")
    if 2 * u <= k * (k + 1) + 4:
        raise ParameterError(
            f"u must exceed k(k+1)/2 + 2 for the arc moment, got u={u}, k={k}"
        )
    if x < 2:
        raise ParameterError(f"X must be >= 2, got {x}")
    decomp = arc_decomposition(x, k, check_disjoint=False)
    qmax = _q_limit(x, k)
    box = _box_integral(decomp.cutoff, k, u, tol, x)
    tables = {q: np.abs(complete_sum_table(q, k)) / q for q in range(1, qmax + 1)}
    per_arc = []
    for q, a in decomp.arcs:
        idx = tuple(aj % q for aj in a)
        per_arc.append((q, a, float(tables[q][idx] ** u * box)))
    value = math.fsum(row[2] for row in per_arc)
    sing = singular_series(k, u, qmax)
    return MajorArcMoment(
        x, k, u, qmax, sing.value, box, tuple(per_arc), value
    )
