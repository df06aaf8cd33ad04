"""Distance analysis of a concrete configuration: value-class adjacency
matrices, forced-eigenvalue interpolation weights, the interpolation
identities, eigenvalue-multiplicity certificates, zonal PSD sweeps, and
the two-sided common-eigenvalue inequality.

Checks report structured pass/fail with residuals instead of raising on
mathematical failure: a falsified certificate is the interesting output.

A sign remark surfaced in the reports: for an equiangular set at product
1/a the forced eigenvalue of the +1/a adjacency matrix is
-(1+1/a)/(2/a) = -(a+1)/2, negative by the interpolation-weight formula;
the certificate carries that signed value verbatim.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from fewdist import linalg
from fewdist.bounds import polynomial_space_dim
from fewdist.configurations import (
    DistanceSpectrum,
    PointConfiguration,
    gram_rows,
    inner_product_spectrum,
)
from fewdist.errors import InapplicableError, PreconditionError
from fewdist.gegenbauer import ZonalCombination, gegenbauer_eval, leading_coefficient
from fewdist.numbers import EXACT, Scalar, format_scalar, is_exact_scalar


def adjacency_matrices(
    cfg: PointConfiguration, spectrum: DistanceSpectrum | None = None
) -> list[linalg.SymMatrix]:
    """The 0/1 adjacency matrix of each spectrum value, in spectrum order.

    The matrices have zero diagonal and satisfy I + sum(Phi_l) = J by
    construction (every off-diagonal pair is assigned to exactly one value
    class).
    """
    spectrum = spectrum or inner_product_spectrum(cfg)
    g = gram_rows(cfg)
    n = cfg.size
    classes = [[[0] * n for _ in range(n)] for _ in spectrum.values]
    for i in range(n):
        for j in range(i + 1, n):
            idx = spectrum.value_index(g[i][j])
            classes[idx][i][j] = 1
            classes[idx][j][i] = 1
    if cfg.regime == EXACT:
        return [
            linalg.SymMatrix(tuple(tuple(Fraction(x) for x in row) for row in cls),
                             EXACT, cfg.tolerance)
            for cls in classes
        ]
    return [
        linalg.SymMatrix(tuple(tuple(float(x) for x in row) for row in cls),
                         cfg.regime, cfg.tolerance)
        for cls in classes
    ]


@dataclass(frozen=True)
class InterpolationWeights:
    """The weights k_l = -prod_{i != l} (tau0 - beta_i) / (beta_l - beta_i).

    They satisfy P(tau0) + sum_l k_l P(beta_l) = 0 for every polynomial P
    of degree < s, and each k_l is a forced eigenvalue of the l-th
    adjacency matrix with large multiplicity.
    """

    tau0: Scalar
    betas: tuple[Scalar, ...]
    weights: tuple[Scalar, ...]

    @property
    def s(self) -> int:
        return len(self.betas)

    @classmethod
    def from_spectrum(cls, spectrum: DistanceSpectrum) -> "InterpolationWeights":
        return interpolation_weights(spectrum.tau0, spectrum.values)


def interpolation_weights(tau0: Scalar, betas) -> InterpolationWeights:
    betas = tuple(betas)
    if len(set(betas)) != len(betas):
        raise PreconditionError("spectrum values must be pairwise distinct")
    if any(b == tau0 for b in betas):
        raise PreconditionError("spectrum values must differ from tau0")
    weights = []
    for l, beta_l in enumerate(betas):
        w = Fraction(-1) if is_exact_scalar(beta_l) and is_exact_scalar(tau0) else -1.0
        for i, beta_i in enumerate(betas):
            if i != l:
                w *= (tau0 - beta_i) / (beta_l - beta_i)
        weights.append(w)
    return InterpolationWeights(tau0, betas, tuple(weights))


@dataclass(frozen=True)
class IdentityReport:
    """Residuals of the interpolation identities.

    degree_residuals[d] = tau0^d + sum_l k_l beta_l^d for d < s (each must
    vanish); product_residual = tau0^s + sum_l k_l beta_l^s
    - prod_l (tau0 - beta_l) (must vanish as well).
    """

    degree_residuals: tuple[Scalar, ...]
    product_residual: Scalar
    exact: bool
    tolerance: float
    passed: bool


def interpolation_identity_check(
    kw: InterpolationWeights, degree_probe: int | None = None, tolerance: float = 1e-9
) -> IdentityReport:
    s = kw.s
    if degree_probe is None:
        degree_probe = s
    if degree_probe < s:
        raise PreconditionError(f"degree probe must be at least s = {s}")
    residuals = []
    for d in range(s):
        residuals.append(kw.tau0**d + sum(k * b**d for k, b in zip(kw.weights, kw.betas)))
    product = kw.tau0**s + sum(k * b**s for k, b in zip(kw.weights, kw.betas))
    expected = 1
    for b in kw.betas:
        expected = expected * (kw.tau0 - b)
    product_residual = product - expected
    exact = is_exact_scalar(product_residual)
    if exact:
        passed = all(r == 0 for r in residuals) and product_residual == 0
    else:
        passed = all(abs(r) <= tolerance for r in residuals) and abs(
            product_residual
        ) <= tolerance
    return IdentityReport(tuple(residuals), product_residual, exact, tolerance, passed)


@dataclass(frozen=True)
class MultiplicityCertificate:
    """Forced-eigenvalue multiplicity check for one spectrum value."""

    value_index: int
    value: Scalar
    eigenvalue: Scalar
    required: int
    measured: int
    vacuous: bool
    passed: bool
    regime: str


def multiplicity_certificates(
    cfg: PointConfiguration,
    K: int,
    spectrum: DistanceSpectrum | None = None,
) -> list[MultiplicityCertificate]:
    """One certificate per spectrum value: the weight k_l must be an
    eigenvalue of the l-th adjacency matrix with multiplicity at least
    N - K (vacuously true when N <= K).  K is the dimension of the
    degree-(s-1) polynomial space, supplied by the caller so there is a
    single source of truth for it."""
    spectrum = spectrum or inner_product_spectrum(cfg)
    kw = InterpolationWeights.from_spectrum(spectrum)
    phis = adjacency_matrices(cfg, spectrum)
    n = cfg.size
    required = n - K
    out = []
    for l, (value, phi) in enumerate(zip(spectrum.values, phis)):
        measured = linalg.nullity_at(phi, kw.weights[l])
        out.append(
            MultiplicityCertificate(
                value_index=l,
                value=value,
                eigenvalue=kw.weights[l],
                required=required,
                measured=measured,
                vacuous=required <= 0,
                passed=measured >= max(required, 0),
                regime=cfg.regime,
            )
        )
    return out


@dataclass(frozen=True)
class ZonalPsdReport:
    degrees: tuple[int, ...]
    psd_flags: tuple[bool, ...]
    passed: bool

    @property
    def failed_degrees(self) -> tuple[int, ...]:
        return tuple(d for d, ok in zip(self.degrees, self.psd_flags) if not ok)


def zonal_psd_check(
    cfg: PointConfiguration, max_degree: int, spectrum: DistanceSpectrum | None = None
) -> ZonalPsdReport:
    """For k = 0..max_degree, test positive semidefiniteness of the matrix
    (G_k((x_i, x_j))).  Failures indicate either a non-realizable Gram
    input or an implementation bug, so they are reported, not raised."""
    if max_degree < 0:
        raise PreconditionError("max_degree must be nonnegative")
    g = gram_rows(cfg)
    n = cfg.size
    flags = []
    distinct = {g[i][j] for i in range(n) for j in range(i + 1, n)}
    for k in range(max_degree + 1):
        table = {v: gegenbauer_eval(cfg.dimension, k, v) for v in distinct}
        one = Fraction(1) if cfg.regime == EXACT else 1.0
        rows = tuple(
            tuple(one if i == j else table[g[i][j]] for j in range(n)) for i in range(n)
        )
        matrix = linalg.SymMatrix(rows, cfg.regime, cfg.tolerance)
        flags.append(linalg.is_psd(matrix))
    return ZonalPsdReport(tuple(range(max_degree + 1)), tuple(flags), all(flags))


@dataclass(frozen=True)
class BracketReport:
    """The two-sided inequality on the common eigenvalue of P(G).

    bracket = P(tau0) + sum_l k_l P(beta_l) is an eigenvalue of
    P(G) = P(tau0) I + sum_l P(beta_l) Phi_l with multiplicity at least
    m = N - 1 - K(s-1); PSD-ness of P(G) forces
    0 <= m * bracket <= N * P(tau0).
    """

    size: int
    s: int
    K: int
    multiplicity_floor: int
    bracket: Scalar
    upper: Scalar
    lower_ok: bool
    upper_ok: bool
    identity_expected: Scalar | None
    identity_ok: bool | None
    passed: bool


def zonal_bracket_check(
    cfg: PointConfiguration,
    combo: ZonalCombination | None = None,
    spectrum: DistanceSpectrum | None = None,
) -> BracketReport:
    """Evaluate the common-eigenvalue inequality for a nonnegative zonal
    combination P.  Applicable only when N > 1 + K(s-1); violation of the
    hypothesis raises InapplicableError.

    In the exact regime with P equal to the pure degree-s polynomial, the
    bracket must equal c_s * prod_l (tau0 - beta_l) (c_s the leading
    coefficient); the report carries that identity check.
    """
    spectrum = spectrum or inner_product_spectrum(cfg)
    s = spectrum.s
    if s < 2:
        raise InapplicableError("the inequality needs an s-distance set with s >= 2")
    n = cfg.size
    K = polynomial_space_dim(cfg.dimension, s - 1)
    if not n > 1 + K * (s - 1):
        raise InapplicableError(
            f"|X| = {n} does not exceed 1 + K(s-1) = {1 + K * (s - 1)}"
        )
    pure_degree_s = combo is None
    if combo is None:
        combo = ZonalCombination.pure(cfg.dimension, s)
    elif combo.dimension != cfg.dimension:
        raise PreconditionError(
            f"combination dimension {combo.dimension} != configuration "
            f"dimension {cfg.dimension}"
        )
    else:
        pure_degree_s = combo.terms == ((s, Fraction(1)),)
    kw = InterpolationWeights.from_spectrum(spectrum)
    p_tau0 = combo.evaluate(spectrum.tau0)
    bracket = p_tau0 + sum(
        k * combo.evaluate(b) for k, b in zip(kw.weights, spectrum.values)
    )
    m = n - 1 - K * (s - 1)
    middle = m * bracket
    upper = n * p_tau0
    if is_exact_scalar(bracket):
        lower_ok = middle >= 0
        upper_ok = middle <= upper
    else:
        lower_ok = middle >= -cfg.tolerance
        upper_ok = middle <= upper + cfg.tolerance
    identity_expected = None
    identity_ok = None
    if pure_degree_s and cfg.regime == EXACT:
        identity_expected = leading_coefficient(cfg.dimension, s)
        for b in spectrum.values:
            identity_expected *= spectrum.tau0 - b
        identity_ok = bracket == identity_expected
    passed = lower_ok and upper_ok and identity_ok is not False
    return BracketReport(
        size=n,
        s=s,
        K=K,
        multiplicity_floor=m,
        bracket=bracket,
        upper=upper,
        lower_ok=lower_ok,
        upper_ok=upper_ok,
        identity_expected=identity_expected,
        identity_ok=identity_ok,
        passed=passed,
    )


def equiangular_sign_note(spectrum: DistanceSpectrum) -> str | None:
    """The sign remark for equiangular spectra (see module docstring)."""
    if not spectrum.is_equiangular:
        return None
    kw = InterpolationWeights.from_spectrum(spectrum)
    return (
        f"forced eigenvalue of the +{format_scalar(spectrum.values[0])} adjacency "
        f"matrix is {format_scalar(kw.weights[0])} (negative by the "
        "interpolation-weight formula; its negation is the half-integer whose "
        "integrality classifies admissible angles)"
    )
