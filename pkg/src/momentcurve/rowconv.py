"""Exact dense engine for the quadratic system (exponents {1, 2}).

The sparse-map path in :mod:`momentcurve.meanvalue` is fully general but
its dict-of-tuples representation drowns at the radii the growth sweeps
need (N in the hundreds, 2s up to 12).  For integer weights and the
exponent set {1, 2} the key space is a thin lattice strip, so we walk it
with dense numpy rows instead:

  level t holds, for each first power sum m1, the row over second power
  sums m2 of the weighted count of t-tuples (n_1..n_t) with
  sum n_i = m1 and sum n_i^2 = m2.

Rows are built level by level with shifted adds (shift by n^2, scale by
the weight at n).  Since sum n_i^2 = sum n_i (mod 2), each row holds a
single parity class, halving storage.  For symmetric weights
(a_n = a_{-n}) the row at -m1 equals the row at m1 and only m1 >= 0 is
materialized.

Exactness: every level is stored in a fixed-width integer dtype chosen
so that a provable bound on the largest possible cell fits (int32 when
it does, int64 otherwise); the engine refuses up front when even int64
could overflow.  The final sum of squared cells is reduced to exact
Python integers via limb-split dot products.
"""

from __future__ import annotations

import numpy as np

from .errors import ParameterError, ResourceError

DEFAULT_CELL_CAP = 800_000_000  # stored cells across levels (middling GBs)

Row = tuple[int, np.ndarray]  # (lo, values); values[i] is the count at m2 = lo + 2i


def quadratic_row_bounds(m1: int, t: int, n_max: int) -> tuple[int, int]:
    """Exact [min, max] of sum n_i^2 over t-tuples in [-N, N] with sum m1.

    Returns (0, -1) when no tuple exists (|m1| > t*N).
    """
    a = abs(m1)
    if a > t * n_max:
        return 0, -1
    # minimum at the balanced split of m1 into t nearly equal parts
    q, r = divmod(a, t)
    lo = (t - r) * q * q + r * (q + 1) * (q + 1)
    # maximum with all coordinates at +-N except one remainder coordinate
    hi = 0
    for j in range(t):
        rem = a - (2 * j - t + 1) * n_max
        if -n_max <= rem <= n_max:
            hi = max(hi, (t - 1) * n_max * n_max + rem * rem)
    return lo, hi


def _row_len(m1: int, t: int, n_max: int) -> int:
    lo, hi = quadratic_row_bounds(m1, t, n_max)
    return 0 if hi < lo else (hi - lo) // 2 + 1


def _level_cells(t: int, n_max: int, symmetric: bool) -> int:
    span = range(0, t * n_max + 1) if symmetric else range(-t * n_max, t * n_max + 1)
    return sum(_row_len(m1, t, n_max) for m1 in span)


def estimate_cells(n_max: int, s: int, symmetric: bool) -> int:
    """Upper bound on stored cells (all levels plus the streaming window)."""
    pairs = (2 * n_max + 1) ** 2
    if symmetric:
        pairs = pairs // 2 + 2 * n_max + 1
    total = pairs  # level-2 COO positions
    for t in range(3, s - 1):
        total += _level_cells(t, n_max, symmetric)
    if s >= 4:
        total += (2 * n_max + 1) * _row_len(0, s - 1, n_max)  # window, worst case
    total += 2 * _row_len(0, s, n_max)  # target row + scratch
    return total


def exact_sq_sum(arr: np.ndarray) -> int:
    """Sum of squares of an integer array, exactly, as a Python int."""
    if arr.size == 0:
        return 0
    if arr.dtype != np.int64:
        arr = arr.astype(np.int64)
    m = int(np.abs(arr).max())
    if m == 0:
        return 0
    if m < (1 << 31):
        chunk = max(1, (1 << 62) // (m * m))
        return sum(
            int(np.dot(arr[i : i + chunk], arr[i : i + chunk]))
            for i in range(0, arr.size, chunk)
        )
    if m < (1 << 42):
        # two-limb split a = (h << 21) + l with 0 <= l < 2^21
        h = arr >> 21
        l = arr - (h << 21)
        hh = exact_sq_sum(h)
        ll = exact_sq_sum(l)
        chunk = max(1, (1 << 62) // m)
        hl = sum(
            int(np.dot(h[i : i + chunk], l[i : i + chunk]))
            for i in range(0, arr.size, chunk)
        )
        return (hh << 42) + (hl << 22) + ll
    return sum(int(v) * int(v) for v in arr.tolist())


class _Level2:
    """Ordered-pair lattice rows (n1+n2, n1^2+n2^2) in COO form."""

    def __init__(self, offs: np.ndarray, wts: np.ndarray, n_max: int, symmetric: bool):
        self.unit = bool(np.all(wts == 1))
        lo_m1 = 0 if symmetric else -2 * n_max
        self.rows: dict[int, tuple[np.ndarray, np.ndarray | None]] = {}
        for m1 in range(lo_m1, 2 * n_max + 1):
            mask = np.isin(m1 - offs, offs)
            n1 = offs[mask]
            if n1.size == 0:
                continue
            n2 = m1 - n1
            pos = n1 * n1 + n2 * n2
            if self.unit:
                self.rows[m1] = (pos, None)
            else:
                val = wts[np.searchsorted(offs, n1)] * wts[np.searchsorted(offs, n2)]
                self.rows[m1] = (pos, val)

    def row(self, m1: int):
        return self.rows.get(m1)


class _Ladder:
    def __init__(self, values: dict[int, int], n_max: int):
        self.n_max = n_max
        self.offs = np.array(sorted(values), dtype=np.int64)
        self.wts = np.array([values[int(n)] for n in self.offs], dtype=np.int64)
        self.unit = bool(np.all(self.wts == 1))
        self.mass = int(np.abs(self.wts).sum())
        self.maxw = int(np.abs(self.wts).max())
        sym = {int(n): int(v) for n, v in values.items()}
        self.symmetric = all(sym.get(-n) == v for n, v in sym.items())
        self.coo = _Level2(self.offs, self.wts, n_max, self.symmetric)
        # weighted bincount goes through float64; exact only below 2^53
        self.float_ok = float(self.mass) ** 3 < 2.0**53

    def cell_bound(self, t: int) -> int:
        # any level-t cell is a mass-weighted sum over a level-2 cell (<= 2 pairs)
        return 2 * self.maxw * self.maxw * self.mass ** (t - 2)

    def level_dtype(self, t: int):
        return np.int32 if self.cell_bound(t) < (1 << 31) else np.int64

    def span(self, t: int) -> range:
        lo = 0 if self.symmetric else -t * self.n_max
        return range(lo, t * self.n_max + 1)

    def source_row(self, source: dict[int, Row], q: int) -> Row | None:
        return source.get(abs(q) if self.symmetric else q)

    def row2(self, m1: int) -> Row:
        """Level-2 row densified from COO (s = 2 reduction only)."""
        entry = self.coo.row(abs(m1) if self.symmetric else m1)
        if entry is None:
            return 0, np.zeros(0, dtype=np.int64)
        pos, val = entry
        lo = int(pos.min())
        comp = (pos - lo) >> 1
        length = int(comp.max()) + 1
        if val is None:
            row = np.bincount(comp, minlength=length).astype(np.int64, copy=False)
        else:
            row = np.zeros(length, dtype=np.int64)
            np.add.at(row, comp, val)
        return lo, row

    def row3(self, m1: int, dtype) -> Row:
        """Level-3 row via one bincount over shifted level-2 positions."""
        lo, hi = quadratic_row_bounds(m1, 3, self.n_max)
        if hi < lo:
            return 0, np.zeros(0, dtype=dtype)
        length = (hi - lo) // 2 + 1
        parts_pos: list[np.ndarray] = []
        parts_val: list[np.ndarray] = []
        for n, wn in zip(self.offs.tolist(), self.wts.tolist()):
            entry = self.coo.row(abs(m1 - n) if self.symmetric else m1 - n)
            if entry is None:
                continue
            pos, val = entry
            parts_pos.append((pos + (n * n - lo)) >> 1)
            if not self.unit:
                base = val if val is not None else np.ones(pos.size, dtype=np.int64)
                parts_val.append(base * wn)
        if not parts_pos:
            return lo, np.zeros(length, dtype=dtype)
        allpos = np.concatenate(parts_pos)
        if self.unit:
            row = np.bincount(allpos, minlength=length)
        elif self.float_ok:
            allval = np.concatenate(parts_val).astype(np.float64)
            row = np.rint(np.bincount(allpos, weights=allval, minlength=length))
        else:
            row = np.zeros(length, dtype=np.int64)
            np.add.at(row, allpos, np.concatenate(parts_val))
        return lo, row.astype(dtype, copy=False)

    def build_row(self, m1: int, t: int, source: dict[int, Row], dtype) -> Row:
        """Level-t row at m1 from level-(t-1) rows by shifted adds."""
        lo, hi = quadratic_row_bounds(m1, t, self.n_max)
        if hi < lo:
            return 0, np.zeros(0, dtype=dtype)
        out = np.zeros((hi - lo) // 2 + 1, dtype=dtype)
        for n, wn in zip(self.offs.tolist(), self.wts.tolist()):
            entry = self.source_row(source, m1 - n)
            if entry is None:
                continue
            src_lo, src = entry
            if src.size == 0:
                continue
            off = (src_lo + n * n - lo) >> 1
            seg = out[off : off + src.size]
            if wn == 1:
                np.add(seg, src, out=seg, casting="unsafe")
            else:
                np.add(seg, src * dtype(wn), out=seg, casting="unsafe")
        return lo, out


def quadratic_mean_value(
    values: dict[int, int],
    n_max: int,
    s: int,
    cell_cap: int = DEFAULT_CELL_CAP,
) -> tuple[int, int]:
    """Exact (raw_moment, distinct_keys) for exponents {1, 2}, integer weights.

    raw_moment is the sum over key (m1, m2) of the squared weighted count
    of s-tuples hitting that key, i.e. the 2s-th moment of the weighted
    quadratic exponential sum; distinct_keys counts the support.
    """
    if s < 1:
        raise ParameterError(f"s must be >= 1, got {s}")
    if n_max < 0:
        raise ParameterError(f"support radius must be >= 0, got {n_max}")
    vals = {int(n): int(v) for n, v in values.items() if v != 0}
    if not vals:
        return 0, 0
    for n in vals:
        if abs(n) > n_max:
            raise ParameterError(f"weight index {n} outside radius {n_max}")
    if s == 1:
        return sum(v * v for v in vals.values()), len(vals)

    lad = _Ladder(vals, n_max)
    if lad.cell_bound(s) >= (1 << 62):
        raise ResourceError(
            f"dense engine overflow risk: cell bound {lad.cell_bound(s)} >= 2^62"
        )
    est = estimate_cells(n_max, s, lad.symmetric)
    if est > cell_cap:
        raise ResourceError(f"dense engine needs about {est} cells, cap is {cell_cap}")

    raw = 0
    distinct = 0

    def fold(m1: int, row: np.ndarray) -> None:
        nonlocal raw, distinct
        sq = exact_sq_sum(row)
        nz = int(np.count_nonzero(row))
        if lad.symmetric and m1 > 0:
            sq, nz = 2 * sq, 2 * nz
        raw += sq
        distinct += nz

    if s == 2:
        for m1 in lad.span(2):
            fold(m1, lad.row2(m1)[1])
        return raw, distinct

    if s == 3:
        for m1 in lad.span(3):
            fold(m1, lad.row3(m1, np.int64)[1])
        return raw, distinct

    # s >= 4: store levels 3..s-2 fully, stream level s-1 through a window
    stored: dict[int, Row] = {}
    if s >= 5:
        dt3 = lad.level_dtype(3)
        for m1 in lad.span(3):
            stored[m1] = lad.row3(m1, dt3)
        for t in range(4, s - 1):
            dt = lad.level_dtype(t)
            nxt = {m1: lad.build_row(m1, t, stored, dt) for m1 in lad.span(t)}
            stored = nxt

    t_win = s - 1
    dt_win = lad.level_dtype(t_win)
    win_span = lad.span(t_win)
    window: dict[int, Row] = {}

    def ensure(q: int) -> None:
        if q not in window and win_span.start <= q <= win_span.stop - 1:
            if t_win == 3:
                window[q] = lad.row3(q, dt_win)
            else:
                window[q] = lad.build_row(q, t_win, stored, dt_win)

    span_s = lad.span(s)
    for q in range(span_s.start - n_max, span_s.start + n_max + 1):
        ensure(q)
    for m1 in span_s:
        ensure(m1 + n_max)
        window.pop(m1 - n_max - 1, None)
        fold(m1, lad.build_row(m1, s, window, np.int64)[1])
    return raw, distinct
