"""Point configurations on the unit sphere: data model, file format,
generators for the named example families, and the derived-set /
switching / lifting transforms.

Representation
--------------
An exact configuration stores raw coordinate rows ``c_i`` together with
optional positive per-coordinate weights ``w`` and a common squared norm
``Q``, all rational.  The unit vector behind row i is ``c_i / sqrt(Q)``
in the metric ``diag(w)``, so every inner product

    (x_i, x_j) = sum_k w_k c_ik c_jk / Q

is an exact rational and no square root is ever materialized.  This is
what keeps integer-vector families (such as the 28 equiangular lines in
dimension 7, stored as integer vectors of squared norm 24) and all
transforms exact.  Floating configurations store plain unit rows.

A configuration may also be *virtual*: known only through its Gram
matrix.  Every analysis in this package needs nothing but inner
products, so virtual configurations run the full pipeline; they simply
have no coordinate rows to write back.

File format (UTF-8, line oriented; ``#`` starts a comment line)
---------------------------------------------------------------
    dim <n>                    ambient dimension (sphere S^{n-1})
    coords <m>                 optional: coordinate arity, default n
    scale <p/q>                optional: common squared norm, default 1
    weights <w1> ... <wm>      optional: per-coordinate weights, default 1
    point <c1> ... <cm>        one line per point

Coordinates are decimal literals or fractions ``p/q``; the regime is
exact iff every numeric token is exact.  ``coords``/``scale``/``weights``
imply the exact regime.  Alternative body: ``gram <N>`` followed by N
rows of N entries is read as a Gram matrix (virtual configuration); a
preceding ``dim`` line is optional and defaults to the Gram rank.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import lru_cache
from math import lcm

import numpy as np

from fewdist import linalg
from fewdist.errors import (
    AmbiguousSpectrumError,
    ConfigFormatError,
    PreconditionError,
    SpectrumError,
)
from fewdist.numbers import (
    DEFAULT_TOLERANCE,
    EXACT,
    FLOATING,
    Scalar,
    format_scalar,
    is_exact_scalar,
    parse_scalar,
)

NAMED_FAMILIES = ("octahedron", "pentagon", "icosahedron", "lines28", "simplex")


@dataclass(frozen=True)
class PointConfiguration:
    """An ordered list of unit vectors on S^{dimension-1}, exact or floating."""

    dimension: int
    regime: str
    coords: tuple[tuple[Scalar, ...], ...] | None = None
    weights: tuple[Fraction, ...] | None = None
    norm_sq: Scalar = Fraction(1)
    gram: tuple[tuple[Scalar, ...], ...] | None = None
    label: str = ""
    tolerance: float = DEFAULT_TOLERANCE

    def __post_init__(self):
        if self.dimension < 1:
            raise PreconditionError("ambient dimension must be at least 1")
        if (self.coords is None) == (self.gram is None):
            raise PreconditionError("exactly one of coords/gram must be given")
        if self.coords is not None:
            self._validate_coords()
        else:
            self._validate_gram()

    def _validate_coords(self):
        if not self.coords:
            raise PreconditionError("a configuration needs at least one point")
        arity = len(self.coords[0])
        if arity < self.dimension:
            raise PreconditionError("coordinate arity below ambient dimension")
        for i, row in enumerate(self.coords):
            if len(row) != arity:
                raise PreconditionError(f"point {i} has arity {len(row)} != {arity}")
        if self.weights is not None:
            if self.regime != EXACT:
                raise PreconditionError("weights are only supported in the exact regime")
            if len(self.weights) != arity:
                raise PreconditionError("weights arity mismatch")
            if any(w <= 0 for w in self.weights):
                raise PreconditionError("weights must be positive")
        if self.regime == EXACT:
            if self.norm_sq <= 0:
                raise PreconditionError("squared norm must be positive")
            w = self.weights or (Fraction(1),) * arity
            for i, row in enumerate(self.coords):
                nsq = sum(wk * c * c for wk, c in zip(w, row))
                if nsq != self.norm_sq:
                    raise ConfigFormatError(
                        f"point {i} has squared norm {nsq}, expected {self.norm_sq}"
                    )
        else:
            for i, row in enumerate(self.coords):
                nsq = sum(float(c) * float(c) for c in row)
                if abs(nsq - 1.0) > self.tolerance:
                    raise ConfigFormatError(
                        f"point {i} has squared norm {nsq!r}, off unit by more than "
                        f"{self.tolerance}"
                    )

    def _validate_gram(self):
        n = len(self.gram)
        if n == 0:
            raise PreconditionError("a configuration needs at least one point")
        for i, row in enumerate(self.gram):
            if len(row) != n:
                raise ConfigFormatError(f"gram row {i} has {len(row)} entries, expected {n}")
        for i in range(n):
            d = self.gram[i][i]
            if self.regime == EXACT:
                if d != 1:
                    raise ConfigFormatError(f"gram diagonal entry {i} is {d}, expected 1")
            elif abs(float(d) - 1.0) > self.tolerance:
                raise ConfigFormatError(f"gram diagonal entry {i} is {d!r}, expected 1")
        for i in range(n):
            for j in range(i + 1, n):
                a, b = self.gram[i][j], self.gram[j][i]
                if self.regime == EXACT:
                    if a != b:
                        raise ConfigFormatError(f"gram entries ({i},{j}) asymmetric")
                    if not -1 <= a <= 1:
                        raise ConfigFormatError(f"gram entry ({i},{j}) = {a} outside [-1, 1]")
                else:
                    if abs(float(a) - float(b)) > self.tolerance:
                        raise ConfigFormatError(f"gram entries ({i},{j}) asymmetric")
                    if abs(float(a)) > 1.0 + self.tolerance:
                        raise ConfigFormatError(f"gram entry ({i},{j}) = {a!r} outside [-1, 1]")

    @property
    def size(self) -> int:
        return len(self.coords) if self.coords is not None else len(self.gram)

    @property
    def is_virtual(self) -> bool:
        return self.coords is None

    @property
    def coordinate_arity(self) -> int:
        if self.is_virtual:
            raise PreconditionError(
                "configuration is known only through its Gram matrix; "
                "coordinates are unavailable"
            )
        return len(self.coords[0])

    def inner_product(self, i: int, j: int) -> Scalar:
        return gram_rows(self)[i][j]

    def gram_matrix(self) -> linalg.SymMatrix:
        return linalg.SymMatrix(gram_rows(self), self.regime, self.tolerance)


@lru_cache(maxsize=128)
def gram_rows(cfg: PointConfiguration) -> tuple[tuple[Scalar, ...], ...]:
    """All pairwise inner products of unit vectors, memoized per configuration."""
    if cfg.gram is not None:
        return cfg.gram
    if cfg.regime == EXACT:
        return _gram_exact(cfg)
    a = np.array(cfg.coords, dtype=float)
    g = a @ a.T
    n = len(g)
    return tuple(
        tuple(1.0 if i == j else float(g[i][j]) for j in range(n)) for i in range(n)
    )


def _gram_exact(cfg: PointConfiguration) -> tuple[tuple[Fraction, ...], ...]:
    coords = cfg.coords
    arity = len(coords[0])
    weights = cfg.weights or (Fraction(1),) * arity
    wdenom = lcm(*[w.denominator for w in weights])
    int_ok = all(Fraction(c).denominator == 1 for row in coords for c in row)
    if int_ok:
        a = np.array([[int(c) for c in row] for row in coords], dtype=object)
        wv = np.array([int(w * wdenom) for w in weights], dtype=object)
        max_abs = max((abs(int(c)) for row in coords for c in row), default=0)
        wmax = max(int(w * wdenom) for w in weights)
        if max_abs * max_abs * wmax * arity < 2**62:
            a = a.astype(np.int64)
            wv = wv.astype(np.int64)
        raw = (a * wv) @ a.T
        denom = cfg.norm_sq * wdenom
        n = len(coords)
        return tuple(
            tuple(
                Fraction(1) if i == j else Fraction(int(raw[i][j])) / denom
                for j in range(n)
            )
            for i in range(n)
        )
    n = len(coords)
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            if j < i:
                row.append(out[j][i])
            elif j == i:
                row.append(Fraction(1))
            else:
                dot = sum(
                    w * Fraction(x) * Fraction(y)
                    for w, x, y in zip(weights, coords[i], coords[j])
                )
                row.append(dot / cfg.norm_sq)
        out.append(row)
    return tuple(tuple(r) for r in out)


# ---------------------------------------------------------------------------
# distance spectrum
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DistanceSpectrum:
    """Distinct off-diagonal inner products, strictly decreasing, with
    ordered-pair counts."""

    tau0: Scalar
    values: tuple[Scalar, ...]
    pair_counts: tuple[int, ...]
    regime: str
    tolerance: float = DEFAULT_TOLERANCE

    @property
    def s(self) -> int:
        return len(self.values)

    @property
    def is_equiangular(self) -> bool:
        if self.s != 2:
            return False
        total = self.values[0] + self.values[1]
        if self.regime == EXACT:
            return total == 0 and self.values[0] > 0
        return abs(total) <= self.tolerance and self.values[0] > 0

    def value_index(self, x: Scalar) -> int:
        if self.regime == EXACT:
            try:
                return self.values.index(Fraction(x))
            except ValueError:
                raise SpectrumError(f"{x} is not a spectrum value") from None
        gaps = [abs(float(v) - float(x)) for v in self.values]
        best = min(range(len(gaps)), key=gaps.__getitem__)
        if gaps[best] > 10 * self.tolerance:
            raise SpectrumError(f"{x} is not within tolerance of a spectrum value")
        return best


def inner_product_spectrum(cfg: PointConfiguration) -> DistanceSpectrum:
    """Distinct off-diagonal inner products with ordered-pair counts.

    Floating values are clustered single-linkage with gap threshold equal
    to the tolerance; the result is rejected as ambiguous when two cluster
    representatives end up closer than 10x the tolerance.
    """
    n = cfg.size
    if n < 2:
        raise PreconditionError("spectrum needs at least 2 points")
    g = gram_rows(cfg)
    raw = [g[i][j] for i in range(n) for j in range(i + 1, n)]
    if cfg.regime == EXACT:
        for v in raw:
            if v >= 1:
                raise SpectrumError("repeated points: off-diagonal inner product 1")
        counts = Counter(raw)
        values = sorted(counts, reverse=True)
        return DistanceSpectrum(
            tau0=Fraction(1),
            values=tuple(values),
            pair_counts=tuple(2 * counts[v] for v in values),
            regime=EXACT,
            tolerance=cfg.tolerance,
        )
    tol = cfg.tolerance
    for v in raw:
        if v >= 1 - tol:
            raise SpectrumError("repeated points: off-diagonal inner product at 1")
        if v < -1 - tol:
            raise SpectrumError(f"inner product {v!r} below -1")
    xs = sorted(float(v) for v in raw)
    clusters: list[list[float]] = [[xs[0]]]
    for v in xs[1:]:
        if v - clusters[-1][-1] <= tol:
            clusters[-1].append(v)
        else:
            clusters.append([v])
    reps = [sum(c) / len(c) for c in clusters]
    for lo, hi in zip(reps, reps[1:]):
        if hi - lo < 10 * tol:
            raise AmbiguousSpectrumError(
                f"cluster representatives {lo!r} and {hi!r} are closer than "
                f"10x tolerance; input too noisy to classify"
            )
    order = list(range(len(reps)))[::-1]  # descending values
    return DistanceSpectrum(
        tau0=1.0,
        values=tuple(reps[i] for i in order),
        pair_counts=tuple(2 * len(clusters[i]) for i in order),
        regime=FLOATING,
        tolerance=tol,
    )


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def octahedron() -> PointConfiguration:
    """The 6 vectors +-e_i in R^3 (two-distance set with products {0, -1})."""
    rows = []
    for i in range(3):
        for sign in (1, -1):
            row = [Fraction(0)] * 3
            row[i] = Fraction(sign)
            rows.append(tuple(row))
    return PointConfiguration(3, EXACT, coords=tuple(rows), label="octahedron")


def pentagon(tolerance: float = DEFAULT_TOLERANCE) -> PointConfiguration:
    """The regular pentagon on S^1 (products cos 72deg and cos 144deg)."""
    rows = tuple(
        (math.cos(2 * math.pi * k / 5), math.sin(2 * math.pi * k / 5)) for k in range(5)
    )
    return PointConfiguration(2, FLOATING, coords=rows, norm_sq=1.0,
                              label="pentagon", tolerance=tolerance)


def icosahedron(tolerance: float = DEFAULT_TOLERANCE) -> PointConfiguration:
    """The 12 icosahedron vertices (three-distance set {1/sqrt5, -1/sqrt5, -1})."""
    phi = (1 + math.sqrt(5)) / 2
    scale = math.sqrt(1 + phi * phi)
    rows = []
    for s1 in (1, -1):
        for s2 in (1, -1):
            base = (0.0, s1 / scale, s2 * phi / scale)
            for shift in range(3):
                rows.append(tuple(base[(k - shift) % 3] for k in range(3)))
    return PointConfiguration(3, FLOATING, coords=tuple(rows), norm_sq=1.0,
                              label="icosahedron", tolerance=tolerance)


def equiangular_lines_28() -> PointConfiguration:
    """28 equiangular lines at common product 1/3: integer vectors in R^8
    with six entries +1 and two entries -3, squared norm 24, all lying in
    the zero-coordinate-sum hyperplane (so they span dimension 7)."""
    rows = []
    for i, j in itertools.combinations(range(8), 2):
        row = [Fraction(1)] * 8
        row[i] = Fraction(-3)
        row[j] = Fraction(-3)
        rows.append(tuple(row))
    return PointConfiguration(
        7, EXACT, coords=tuple(rows), norm_sq=Fraction(24), label="lines28"
    )


def simplex_face_centers(n: int, s: int) -> PointConfiguration:
    """Centers of all s-faces of a regular simplex in R^n, realized exactly.

    Vertices live in R^{n+1} on the zero-coordinate-sum hyperplane; the
    C(n+1, s) face centers are stored as the integer vectors
    (n+1)*sum_{i in A} e_i - s*(1,...,1) of common squared norm
    s(n+1-s)(n+1).  Inner products depend only on |A cap B|:
    (j(n+1) - s^2) / (s(n+1-s)).
    """
    if not 1 <= s <= n:
        raise PreconditionError("face order s must satisfy 1 <= s <= n")
    rows = []
    for subset in itertools.combinations(range(n + 1), s):
        chosen = set(subset)
        rows.append(tuple(
            Fraction((n + 1) - s) if k in chosen else Fraction(-s) for k in range(n + 1)
        ))
    return PointConfiguration(
        n,
        EXACT,
        coords=tuple(rows),
        norm_sq=Fraction(s * (n + 1 - s) * (n + 1)),
        label=f"simplex-face-centers(n={n},s={s})",
    )


def generate_named(
    family: str,
    n: int | None = None,
    s: int | None = None,
    tolerance: float = DEFAULT_TOLERANCE,
) -> PointConfiguration:
    family = family.strip().lower()
    if family == "octahedron":
        return octahedron()
    if family == "pentagon":
        return pentagon(tolerance)
    if family == "icosahedron":
        return icosahedron(tolerance)
    if family == "lines28":
        return equiangular_lines_28()
    if family == "simplex":
        if n is None or s is None:
            raise PreconditionError("family 'simplex' requires n and s")
        return simplex_face_centers(n, s)
    raise PreconditionError(
        f"unknown family {family!r}; known: {', '.join(NAMED_FAMILIES)}"
    )


# ---------------------------------------------------------------------------
# transforms
# ---------------------------------------------------------------------------

def derive_set(cfg: PointConfiguration, base_index: int, alpha: Scalar) -> PointConfiguration:
    """The section through the points at inner product alpha from the base
    point, renormalized: y -> (y - alpha*x) / sqrt(1 - alpha^2).

    Every product beta realized inside the section maps to
    (beta - alpha^2) / (1 - alpha^2).  The result lies in the hyperplane
    orthogonal to the base point, so its ambient dimension drops by one;
    coordinates are kept in the original frame and dimension claims stay
    with Gram rank.
    """
    if not 0 <= base_index < cfg.size:
        raise PreconditionError(f"base index {base_index} out of range")
    if cfg.dimension < 2:
        raise PreconditionError("cannot derive below ambient dimension 1")
    spectrum = inner_product_spectrum(cfg)
    idx = spectrum.value_index(alpha)
    alpha = spectrum.values[idx]
    if not -1 < alpha < 1:
        raise PreconditionError("derivation requires |alpha| < 1")
    g = gram_rows(cfg)
    selected = [
        j for j in range(cfg.size)
        if j != base_index and spectrum.value_index(g[base_index][j]) == idx
    ]
    if not selected:
        raise PreconditionError(
            f"alpha = {format_scalar(alpha)} is not realized by the base point"
        )
    label = f"{cfg.label}/derived(base={base_index},alpha={format_scalar(alpha)})"
    if cfg.is_virtual:
        if cfg.regime == EXACT:
            shrink = 1 - alpha * alpha
            new_gram = tuple(
                tuple(
                    Fraction(1) if a == b else (g[i][j] - alpha * alpha) / shrink
                    for b, j in enumerate(selected)
                )
                for a, i in enumerate(selected)
            )
        else:
            shrink = 1.0 - float(alpha) ** 2
            new_gram = tuple(
                tuple(
                    1.0 if a == b else (float(g[i][j]) - float(alpha) ** 2) / shrink
                    for b, j in enumerate(selected)
                )
                for a, i in enumerate(selected)
            )
        return PointConfiguration(cfg.dimension - 1, cfg.regime, gram=new_gram,
                                  label=label, tolerance=cfg.tolerance)
    base = cfg.coords[base_index]
    if cfg.regime == EXACT:
        new_rows = tuple(
            tuple(c - alpha * b for c, b in zip(cfg.coords[j], base)) for j in selected
        )
        return PointConfiguration(
            cfg.dimension - 1,
            EXACT,
            coords=new_rows,
            weights=cfg.weights,
            norm_sq=cfg.norm_sq * (1 - alpha * alpha),
            label=label,
            tolerance=cfg.tolerance,
        )
    shrink = math.sqrt(1.0 - float(alpha) ** 2)
    new_rows = tuple(
        tuple((float(c) - float(alpha) * float(b)) / shrink
              for c, b in zip(cfg.coords[j], base))
        for j in selected
    )
    return PointConfiguration(cfg.dimension - 1, FLOATING, coords=new_rows,
                              norm_sq=1.0, label=label, tolerance=cfg.tolerance)


def switch_to_common_product(cfg: PointConfiguration, base_index: int) -> PointConfiguration:
    """Negate every point whose product with the base point is -alpha, so
    that all products with the base become +alpha.  Requires an
    equiangular configuration (spectrum {alpha, -alpha}); preserves
    equiangularity and the underlying line set.
    """
    if not 0 <= base_index < cfg.size:
        raise PreconditionError(f"base index {base_index} out of range")
    spectrum = inner_product_spectrum(cfg)
    if not spectrum.is_equiangular:
        raise PreconditionError(
            "switching requires an equiangular spectrum {alpha, -alpha}; got "
            + "{" + ", ".join(format_scalar(v) for v in spectrum.values) + "}"
        )
    g = gram_rows(cfg)
    neg_index = 1  # index of -alpha in the descending value list
    flip = [
        j for j in range(cfg.size)
        if j != base_index and spectrum.value_index(g[base_index][j]) == neg_index
    ]
    label = f"{cfg.label}/switched(base={base_index})"
    if not flip:
        return replace(cfg, label=label)
    flip_set = set(flip)
    if cfg.is_virtual:
        n = cfg.size
        signs = [-1 if j in flip_set else 1 for j in range(n)]
        if cfg.regime == EXACT:
            new_gram = tuple(
                tuple(Fraction(1) if i == j else signs[i] * signs[j] * g[i][j]
                      for j in range(n))
                for i in range(n)
            )
        else:
            new_gram = tuple(
                tuple(1.0 if i == j else signs[i] * signs[j] * float(g[i][j])
                      for j in range(n))
                for i in range(n)
            )
        return PointConfiguration(cfg.dimension, cfg.regime, gram=new_gram,
                                  label=label, tolerance=cfg.tolerance)
    new_rows = tuple(
        tuple(-c for c in row) if j in flip_set else row
        for j, row in enumerate(cfg.coords)
    )
    return replace(cfg, coords=new_rows, label=label)


def lift_to_equiangular(cfg: PointConfiguration) -> PointConfiguration:
    """Embed a two-distance set with alpha + beta < 0 into one extra
    dimension as t*x_i + sqrt(1-t^2)*y, with t^2 = 2/(2 - alpha - beta)
    chosen so the two products t^2*alpha + (1-t^2) and t^2*beta + (1-t^2)
    are opposite; the result is equiangular with the same size.
    """
    spectrum = inner_product_spectrum(cfg)
    if spectrum.s != 2:
        raise PreconditionError("lifting requires a two-distance set")
    alpha, beta = spectrum.values
    if not alpha + beta < 0:
        raise PreconditionError(
            "lifting requires alpha + beta < 0; got "
            f"{format_scalar(alpha)} + {format_scalar(beta)}"
        )
    label = f"{cfg.label}/lifted"
    if cfg.regime == EXACT:
        t_sq = Fraction(2) / (2 - alpha - beta)
        if cfg.is_virtual:
            n = cfg.size
            g = gram_rows(cfg)
            new_gram = tuple(
                tuple(Fraction(1) if i == j else t_sq * g[i][j] + (1 - t_sq)
                      for j in range(n))
                for i in range(n)
            )
            return PointConfiguration(cfg.dimension + 1, EXACT, gram=new_gram,
                                      label=label, tolerance=cfg.tolerance)
        arity = cfg.coordinate_arity
        weights = cfg.weights or (Fraction(1),) * arity
        new_rows = tuple(row + (Fraction(1),) for row in cfg.coords)
        new_weights = tuple(t_sq * w for w in weights) + (cfg.norm_sq * (1 - t_sq),)
        return PointConfiguration(
            cfg.dimension + 1,
            EXACT,
            coords=new_rows,
            weights=new_weights,
            norm_sq=cfg.norm_sq,
            label=label,
            tolerance=cfg.tolerance,
        )
    t_sq = 2.0 / (2.0 - float(alpha) - float(beta))
    if cfg.is_virtual:
        n = cfg.size
        g = gram_rows(cfg)
        new_gram = tuple(
            tuple(1.0 if i == j else t_sq * float(g[i][j]) + (1.0 - t_sq)
                  for j in range(n))
            for i in range(n)
        )
        return PointConfiguration(cfg.dimension + 1, FLOATING, gram=new_gram,
                                  label=label, tolerance=cfg.tolerance)
    t = math.sqrt(t_sq)
    tail = math.sqrt(1.0 - t_sq)
    new_rows = tuple(
        tuple(t * float(c) for c in row) + (tail,) for row in cfg.coords
    )
    return PointConfiguration(cfg.dimension + 1, FLOATING, coords=new_rows,
                              norm_sq=1.0, label=label, tolerance=cfg.tolerance)


# ---------------------------------------------------------------------------
# file format
# ---------------------------------------------------------------------------

def parse_configuration(text: str, tolerance: float = DEFAULT_TOLERANCE) -> PointConfiguration:
    """Parse the line-oriented configuration format; see the module docstring."""
    lines = text.splitlines()
    significant: list[tuple[int, list[str]]] = []
    for lineno, line in enumerate(lines, start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        significant.append((lineno, stripped.split()))

    if not significant:
        raise ConfigFormatError("empty configuration: no header line")

    pos = 0
    dimension: int | None = None
    lineno, tokens = significant[pos]
    if tokens[0] == "dim":
        dimension = _parse_int(tokens, lineno, "dim")
        pos += 1
    if pos < len(significant) and significant[pos][1][0] == "gram":
        return _parse_gram(significant, pos, dimension, tolerance)
    if dimension is None:
        raise ConfigFormatError(
            f"expected 'dim <n>' or 'gram <N>' header, got {' '.join(tokens)!r}", lineno
        )

    arity = dimension
    norm_sq: Fraction = Fraction(1)
    weights: tuple[Fraction, ...] | None = None
    saw_exact_directive = False
    point_rows: list[tuple[int, list[str]]] = []
    while pos < len(significant):
        lineno, tokens = significant[pos]
        key = tokens[0]
        if key == "coords":
            if point_rows:
                raise ConfigFormatError("'coords' must precede point lines", lineno)
            arity = _parse_int(tokens, lineno, "coords")
            if arity < dimension:
                raise ConfigFormatError(
                    f"coordinate arity {arity} below dimension {dimension}", lineno
                )
            saw_exact_directive = True
        elif key == "scale":
            if len(tokens) != 2:
                raise ConfigFormatError("'scale' takes one rational value", lineno)
            norm_sq = _parse_exact(tokens[1], lineno)
            if norm_sq <= 0:
                raise ConfigFormatError("scale must be positive", lineno)
            saw_exact_directive = True
        elif key == "weights":
            weights = tuple(_parse_exact(tok, lineno) for tok in tokens[1:])
            if any(w <= 0 for w in weights):
                raise ConfigFormatError("weights must be positive", lineno)
            saw_exact_directive = True
        elif key == "point":
            point_rows.append((lineno, tokens[1:]))
        else:
            raise ConfigFormatError(f"unknown directive {key!r}", lineno)
        pos += 1

    if not point_rows:
        raise ConfigFormatError("configuration has no point lines")

    parsed_rows: list[tuple[Scalar, ...]] = []
    exact = True
    for lineno, toks in point_rows:
        if len(toks) != arity:
            raise ConfigFormatError(
                f"point has {len(toks)} coordinates, expected {arity}", lineno
            )
        try:
            row = tuple(parse_scalar(tok) for tok in toks)
        except ValueError as exc:
            raise ConfigFormatError(str(exc), lineno) from None
        exact = exact and all(is_exact_scalar(c) for c in row)
        parsed_rows.append(row)

    if not exact and saw_exact_directive:
        raise ConfigFormatError(
            "scale/weights/coords directives require all-fraction coordinates"
        )

    if exact:
        cfg_rows = tuple(tuple(Fraction(c) for c in row) for row in parsed_rows)
        w = weights or (Fraction(1),) * arity
        for (lineno, _), row in zip(point_rows, cfg_rows):
            nsq = sum(wk * c * c for wk, c in zip(w, row))
            if nsq != norm_sq:
                raise ConfigFormatError(
                    f"point has squared norm {nsq}, expected {norm_sq}", lineno
                )
        return PointConfiguration(
            dimension, EXACT, coords=cfg_rows, weights=weights,
            norm_sq=norm_sq, tolerance=tolerance,
        )
    cfg_rows = tuple(tuple(float(c) for c in row) for row in parsed_rows)
    for (lineno, _), row in zip(point_rows, cfg_rows):
        nsq = sum(c * c for c in row)
        if abs(nsq - 1.0) > tolerance:
            raise ConfigFormatError(
                f"point has squared norm {nsq!r}, off unit by more than {tolerance}",
                lineno,
            )
    return PointConfiguration(dimension, FLOATING, coords=cfg_rows,
                              norm_sq=1.0, tolerance=tolerance)


def _parse_int(tokens: list[str], lineno: int, name: str) -> int:
    if len(tokens) != 2:
        raise ConfigFormatError(f"'{name}' takes one integer", lineno)
    try:
        return int(tokens[1])
    except ValueError:
        raise ConfigFormatError(f"'{name}' takes one integer, got {tokens[1]!r}", lineno) from None


def _parse_exact(token: str, lineno: int) -> Fraction:
    value = parse_scalar(token)
    if not is_exact_scalar(value):
        raise ConfigFormatError(f"expected an exact rational, got {token!r}", lineno)
    return Fraction(value)


def _parse_gram(significant, pos, dimension, tolerance) -> PointConfiguration:
    lineno, tokens = significant[pos]
    n = _parse_int(tokens, lineno, "gram")
    if n < 1:
        raise ConfigFormatError("gram order must be positive", lineno)
    rows_raw = significant[pos + 1:]
    if len(rows_raw) != n:
        raise ConfigFormatError(
            f"gram body has {len(rows_raw)} rows, expected {n}", lineno
        )
    parsed = []
    exact = True
    for row_lineno, toks in rows_raw:
        if len(toks) != n:
            raise ConfigFormatError(
                f"gram row has {len(toks)} entries, expected {n}", row_lineno
            )
        try:
            row = tuple(parse_scalar(tok) for tok in toks)
        except ValueError as exc:
            raise ConfigFormatError(str(exc), row_lineno) from None
        exact = exact and all(is_exact_scalar(c) for c in row)
        parsed.append(row)
    if exact:
        gram = tuple(tuple(Fraction(c) for c in row) for row in parsed)
        regime = EXACT
    else:
        gram = tuple(tuple(float(c) for c in row) for row in parsed)
        regime = FLOATING
    probe = PointConfiguration(max(dimension or 1, 1), regime, gram=gram,
                               tolerance=tolerance)
    if dimension is None:
        dimension = max(linalg.rank(probe.gram_matrix()), 1)
    return PointConfiguration(dimension, regime, gram=gram, tolerance=tolerance)


def format_configuration(cfg: PointConfiguration) -> str:
    """Render a configuration in the text format; exact values round-trip
    bit-exactly, floating values print with 12 significant digits."""
    out: list[str] = []
    if cfg.label:
        out.append(f"# {cfg.label}")
    out.append(f"dim {cfg.dimension}")
    if cfg.is_virtual:
        out.append(f"gram {cfg.size}")
        for row in cfg.gram:
            out.append(" ".join(format_scalar(v) for v in row))
        return "\n".join(out) + "\n"
    arity = cfg.coordinate_arity
    if arity != cfg.dimension:
        out.append(f"coords {arity}")
    if cfg.regime == EXACT and cfg.norm_sq != 1:
        out.append(f"scale {format_scalar(cfg.norm_sq)}")
    if cfg.weights is not None and any(w != 1 for w in cfg.weights):
        out.append("weights " + " ".join(format_scalar(w) for w in cfg.weights))
    for row in cfg.coords:
        out.append("point " + " ".join(format_scalar(c) for c in row))
    return "\n".join(out) + "\n"
