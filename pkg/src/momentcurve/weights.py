"""Weight sequences on [-N, N] and their norms, generators, and file I/O.

A weight sequence assigns an amplitude a_n to each integer n with |n| <= N.
Three arithmetic modes are supported and tracked explicitly:

  integer        all amplitudes are Python ints (bit-exact counting)
  rational       all amplitudes are fractions.Fraction (exact positive search)
  complex-float  amplitudes are Python complex (general sequences)

Exact modes never round.  Mixed inputs promote integer -> rational ->
complex-float.  Amplitudes that are exactly zero are not stored; absent
indices mean zero.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ParameterError, WeightFormatError, WeightParseError
from .rng import SplitMix64

MODE_INTEGER = "integer"
MODE_RATIONAL = "rational"
MODE_COMPLEX = "complex-float"

_MODE_RANK = {MODE_INTEGER: 0, MODE_RATIONAL: 1, MODE_COMPLEX: 2}

_INT_TOKEN = re.compile(r"^[+-]?\d+$")
_RATIONAL_TOKEN = re.compile(r"^([+-]?\d+)/(\d+)$")
_FLOAT_TOKEN = re.compile(r"^[+-]?(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?$")


def promote_mode(mode_a: str, mode_b: str) -> str:
    return mode_a if _MODE_RANK[mode_a] >= _MODE_RANK[mode_b] else mode_b


def _coerce(value, mode):
    if mode == MODE_COMPLEX:
        return complex(value)
    if mode == MODE_RATIONAL:
        return Fraction(value)
    return int(value)


def _classify(value) -> str:
    if isinstance(value, bool):
        raise ParameterError("weight amplitudes cannot be booleans")
    if isinstance(value, int):
        return MODE_INTEGER
    if isinstance(value, Fraction):
        return MODE_RATIONAL
    if isinstance(value, (float, complex)):
        return MODE_COMPLEX
    raise ParameterError(f"unsupported amplitude type {type(value).__name__}")


@dataclass(frozen=True)
class Weights:
    """Immutable weight sequence; construct via :func:`make_weights`."""

    n_max: int
    values: Mapping[int, object] = field(repr=False)
    mode: str = MODE_INTEGER

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(sorted(self.values))

    def amp(self, n: int):
        """Amplitude at index n (zero when absent)."""
        return self.values.get(n, 0)

    @property
    def is_zero(self) -> bool:
        return not self.values

    @property
    def is_positive(self) -> bool:
        # positivity demands full support and strictly positive real entries
        if len(self.values) != 2 * self.n_max + 1:
            return False
        for v in self.values.values():
            if isinstance(v, complex):
                if v.imag != 0.0 or not v.real > 0.0:
                    return False
            elif not v > 0:
                return False
        return True

    def restrict(self, modulus: int, residue: int) -> "Weights":
        """Keep only indices n with n = residue (mod modulus)."""
        if modulus < 1:
            raise ParameterError(f"modulus must be >= 1, got {modulus}")
        kept = {n: v for n, v in self.values.items() if (n - residue) % modulus == 0}
        return Weights(self.n_max, kept, self.mode)

    def scale(self, gamma) -> "Weights":
        mode = promote_mode(self.mode, _classify(gamma))
        if gamma == 0:
            return Weights(self.n_max, {}, mode)
        vals = {n: _coerce(v, mode) * _coerce(gamma, mode) for n, v in self.values.items()}
        return Weights(self.n_max, vals, mode)

    def promoted(self, mode: str) -> "Weights":
        mode = promote_mode(self.mode, mode)
        if mode == self.mode:
            return self
        return Weights(self.n_max, {n: _coerce(v, mode) for n, v in self.values.items()}, mode)

    def dense(self) -> list:
        """Amplitudes at n = -N..N as a list (zeros filled in)."""
        zero = _coerce(0, self.mode)
        return [self.values.get(n, zero) for n in range(-self.n_max, self.n_max + 1)]


def make_weights(n_max: int, values: Mapping[int, object], mode: str | None = None) -> Weights:
    """Validate, canonicalize (drop exact zeros), and wrap a value map."""
    if n_max < 0:
        raise ParameterError(f"support radius must be >= 0, got {n_max}")
    inferred = MODE_INTEGER
    for n, v in values.items():
        if abs(n) > n_max:
            raise ParameterError(f"index {n} outside [-{n_max}, {n_max}]")
        inferred = promote_mode(inferred, _classify(v))
        if isinstance(v, complex) and not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise ParameterError(f"amplitude at {n} is not finite")
        if isinstance(v, float) and not math.isfinite(v):
            raise ParameterError(f"amplitude at {n} is not finite")
    if mode is not None:
        if mode not in _MODE_RANK:
            raise ParameterError(f"unknown mode {mode!r}")
        inferred = promote_mode(inferred, mode)
    kept = {int(n): _coerce(v, inferred) for n, v in values.items() if v != 0}
    return Weights(n_max, kept, inferred)


@dataclass(frozen=True)
class Rho:
    """L2 norm of a weight sequence: exact square plus floating root."""

    squared: object  # int, Fraction, or float; == 1 for the all-zero sequence
    value: float

    @property
    def squared_float(self) -> float:
        return float(self.squared)


def rho(w: Weights) -> Rho:
    """rho(w) = sqrt(sum |a_n|^2), with the all-zero sequence mapped to 1.

    The zero convention keeps normalized mean values well defined when a
    class restriction empties the sequence.
    """
    if w.is_zero:
        return Rho(1, 1.0)
    if w.mode == MODE_COMPLEX:
        sq = math.fsum([v.real * v.real + v.imag * v.imag for v in w.values.values()])
        return Rho(sq, math.sqrt(sq))
    sq = sum(v * v for v in w.values.values())
    return Rho(sq, math.sqrt(sq))


# ---------------------------------------------------------------------------
# generators


def unit_weights(n_max: int) -> Weights:
    return make_weights(n_max, {n: 1 for n in range(-n_max, n_max + 1)})


def spike_weights(n_max: int, at: int = 0) -> Weights:
    if abs(at) > n_max:
        raise ParameterError(f"spike index {at} outside [-{n_max}, {n_max}]")
    return make_weights(n_max, {at: 1})


def geometric_weights(n_max: int, ratio) -> Weights:
    """a_n = ratio^|n| with ratio a rational in (0, 1]."""
    try:
        r = Fraction(ratio)
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise ParameterError(f"bad geometric ratio {ratio!r}") from exc
    if not 0 < r <= 1:
        raise ParameterError(f"geometric ratio must lie in (0, 1], got {r}")
    return make_weights(n_max, {n: r ** abs(n) for n in range(-n_max, n_max + 1)}, MODE_RATIONAL)


_RANDOM_RESOLUTION = 1 << 16


def random_weights(n_max: int, seed: int) -> Weights:
    """Positive rationals from {1/R, ..., R/R}, R = 2^16, one per index.

    Draws come from a fixed splitmix64 stream in index order -N..N, so a
    (seed, N) pair names the sequence forever.
    """
    gen = SplitMix64(seed)
    vals = {}
    for n in range(-n_max, n_max + 1):
        vals[n] = Fraction(1 + gen.next_below(_RANDOM_RESOLUTION), _RANDOM_RESOLUTION)
    return make_weights(n_max, vals, MODE_RATIONAL)


# ---------------------------------------------------------------------------
# file format: header line "N", then lines "n re im"; missing indices zero


def _parse_component(token: str, lineno: int):
    """Return (value, mode) for one re/im token."""
    if _INT_TOKEN.match(token):
        return int(token), MODE_INTEGER
    m = _RATIONAL_TOKEN.match(token)
    if m:
        num, den = int(m.group(1)), int(m.group(2))
        if den == 0:
            raise WeightParseError(f"line {lineno}: zero denominator in {token!r}")
        return Fraction(num, den), MODE_RATIONAL
    if _FLOAT_TOKEN.match(token):
        return float(token), MODE_COMPLEX
    raise WeightParseError(f"line {lineno}: cannot parse amplitude token {token!r}")


def parse_weights(text: str) -> Weights:
    """Parse weight-file text (see module docstring for the format)."""
    lines = text.splitlines()
    if not lines:
        raise WeightParseError("line 1: empty weight file")
    header = lines[0].strip()
    if not _INT_TOKEN.match(header):
        raise WeightParseError(f"line 1: header must be the support radius, got {header!r}")
    n_max = int(header)
    if n_max < 0:
        raise WeightParseError(f"line 1: support radius must be >= 0, got {n_max}")

    entries: dict[int, tuple] = {}
    mode = MODE_INTEGER
    any_imag = False
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 3:
            raise WeightParseError(
                f"line {lineno}: expected 'n re im' (3 fields), got {len(parts)}"
            )
        if not _INT_TOKEN.match(parts[0]):
            raise WeightParseError(f"line {lineno}: bad index {parts[0]!r}")
        n = int(parts[0])
        if abs(n) > n_max:
            raise WeightFormatError(f"line {lineno}: index {n} outside [-{n_max}, {n_max}]")
        if n in entries:
            raise WeightFormatError(f"line {lineno}: duplicate index {n}")
        re_val, re_mode = _parse_component(parts[1], lineno)
        im_val, im_mode = _parse_component(parts[2], lineno)
        mode = promote_mode(mode, promote_mode(re_mode, im_mode))
        if im_val != 0:
            any_imag = True
        entries[n] = (re_val, im_val)

    # exact modes carry real amplitudes only; a nonzero imaginary part
    # forces the floating complex representation
    if any_imag:
        mode = MODE_COMPLEX
    vals: dict[int, object] = {}
    for n, (re_val, im_val) in entries.items():
        if mode == MODE_COMPLEX:
            vals[n] = complex(float(re_val), float(im_val))
        else:
            vals[n] = re_val
    return make_weights(n_max, vals, mode)


def _format_component(v, mode: str) -> str:
    if mode == MODE_INTEGER:
        return str(int(v))
    if mode == MODE_RATIONAL:
        f = Fraction(v)
        return f"{f.numerator}/{f.denominator}"
    return repr(float(v))


def format_weights(w: Weights) -> str:
    """Write the canonical file text: sorted support, one entry per line."""
    out = [str(w.n_max)]
    for n in w.support:
        v = w.values[n]
        if w.mode == MODE_COMPLEX:
            out.append(f"{n} {repr(v.real)} {repr(v.imag)}")
        else:
            zero = "0" if w.mode == MODE_INTEGER else "0/1"
            out.append(f"{n} {_format_component(v, w.mode)} {zero}")
    return "\n".join(out) + "\n"


def read_weight_file(path) -> Weights:
    with open(path, "r", encoding="ascii") as fh:
        return parse_weights(fh.read())


def write_weight_file(w: Weights, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(format_weights(w))


# ---------------------------------------------------------------------------
# CLI weight descriptors: unit | spike[:AT] | geometric:RATIO | random:SEED
# | file:PATH


def weights_from_spec(spec: str, n_max: int | None) -> Weights:
    kind, _, arg = spec.partition(":")
    if kind == "file":
        if not arg:
            raise ParameterError("weight descriptor 'file:' needs a path")
        w = read_weight_file(arg)
        if n_max is not None and n_max != w.n_max:
            raise ParameterError(
                f"weight file has support radius {w.n_max}, flags say {n_max}"
            )
        return w
    if n_max is None:
        raise ParameterError(f"weight descriptor {spec!r} needs an explicit support radius")
    if kind == "unit":
        if arg:
            raise ParameterError("weight descriptor 'unit' takes no argument")
        return unit_weights(n_max)
    if kind == "spike":
        at = 0
        if arg:
            if not _INT_TOKEN.match(arg):
                raise ParameterError(f"bad spike index {arg!r}")
            at = int(arg)
        return spike_weights(n_max, at)
    if kind == "geometric":
        if not arg:
            raise ParameterError("weight descriptor 'geometric:' needs a ratio")
        return geometric_weights(n_max, arg)
    if kind == "random":
        if not _INT_TOKEN.match(arg or ""):
            raise ParameterError(f"weight descriptor 'random:' needs an integer seed, got {arg!r}")
        return random_weights(n_max, int(arg))
    raise ParameterError(f"unknown weight descriptor kind {kind!r}")


def weight_corpus(n_max: int, seeds: Iterable[int] = (1, 2, 3, 4, 5)) -> dict[str, Weights]:
    """The standard test family: unit, spike, geometric(1/2), seeded randoms."""
    corpus = {
        "unit": unit_weights(n_max),
        "spike": spike_weights(n_max),
        "geometric-1/2": geometric_weights(n_max, Fraction(1, 2)),
    }
    for seed in seeds:
        corpus[f"random-{seed}"] = random_weights(n_max, seed)
    return corpus
