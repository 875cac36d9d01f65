"""Isolated exact eigenstates of the two-photon Rabi Hamiltonian.

The model couples a two-level system to one bosonic mode through the
squared ladder operators,

    H = (w0/2) sigma_z + w b'b + g (b^2 + b'^2)(sigma_+ + sigma_-),

with sigma_+- = sigma_x +- i sigma_y.  In the holomorphic representation
(b -> d/dz, b' -> z) a rotation by the fixed angle t0 decouples one spinor
component; the survivor psi_2 obeys a fourth-order equation L psi_2 = 0.
At the parameter lock g/w = 1/(2*sqrt6), E/w = (N+1)/sqrt3 - 1/2, the
operator L conjugated by a Gaussian gauge factor and pulled through
x = -+ xi z^2 lands inside the family-3 ladder span, so the spectral
condition collapses to det(M0 + lambda*I) = 0 on an (N+1)-dimensional
space, with lambda = 3 w0^2 / (4 w^2).  Everything up to the final root
isolation is exact over Q(sqrt2, sqrt3).

Frequencies are reported as 2w/w0 = sqrt(3/lambda).  All operator algebra
uses w = 1 units, so E stands for E/w and w0 for w0/w throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .diffop import (DiffOp, GaugeFactor, commutator, conjugate_by_gauge,
                     substitute_square)
from .families import (BasisElement, FamilySpec, apply_op, family_operators,
                       matrix_rep, substitute_pair, substituted_context)
from .laurent import LaurentPoly
from .linalg import (FieldExtension, charpoly, isolate_real_roots, mat_scale,
                     mat_vec, minimal_factors, nullspace, poly_eval, poly_gcd,
                     poly_trim, refine_root, squarefree_part)
from .scalars import SQRT2, SQRT3, SQRT6, QuadScalar, embed_to_float, format_scalar


class RabiError(ValueError):
    """Invalid configuration or an inconsistency in the assembled solver."""


# Exact model constants (w = 1 units).
ETA = SQRT2 / 8
XI = 3 * SQRT2 / 8
TWO_G = SQRT6 / 6
COS_2T = 5 * SQRT3 / 9
SIN_2T = SQRT6 / 9

_HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# configuration
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RabiConfig:
    """One solvable lock: subspace size N and solution type I or II.

    Everything else is determined: the rotation angle, the coupling, the
    energy, the gauge factor, the coordinate stretch, and the affine map
    lambda -> C appearing in the subspace combination.
    """

    n_max: int
    sol_type: str

    def __post_init__(self) -> None:
        if self.sol_type not in ("I", "II"):
            raise RabiError(f"solution type must be 'I' or 'II', got {self.sol_type!r}")
        if self.n_max < 0:
            raise RabiError("subspace size N must be non-negative")
        if COS_2T * COS_2T + SIN_2T * SIN_2T != QuadScalar(1):
            raise RabiError("stored angle pair is not on the unit circle")
        sin_4t = 2 * SIN_2T * COS_2T
        cos_4t = COS_2T * COS_2T - SIN_2T * SIN_2T
        if 23 * sin_4t != 10 * SQRT2 * cos_4t:
            raise RabiError("stored angle pair has the wrong quadruple angle")

    @property
    def s(self) -> Fraction:
        return Fraction(1, 2) if self.sol_type == "I" else Fraction(3, 2)

    @property
    def alpha(self) -> Fraction:
        if self.sol_type == "I":
            return Fraction(-1, 4) - Fraction(self.n_max, 2)
        return Fraction(5, 4) - Fraction(self.n_max, 2)

    @property
    def dimension(self) -> int:
        return self.n_max + 1

    @property
    def energy_ratio(self) -> QuadScalar:
        """E/w = (N+1)/sqrt3 - 1/2, exact."""
        return (self.n_max + 1) * SQRT3 / 3 - _HALF

    @property
    def sin_2t(self) -> QuadScalar:
        """sin(2t) at the working angle: +sin(2 t0) for type I, - for II."""
        return SIN_2T if self.sol_type == "I" else -SIN_2T

    @property
    def gauge(self) -> GaugeFactor:
        """exp(eta z^2) for type I, z*exp(-eta z^2) for type II."""
        if self.sol_type == "I":
            return GaugeFactor(0, ETA)
        return GaugeFactor(1, -ETA)

    @property
    def stretch(self) -> QuadScalar:
        """The coordinate map is x = stretch * z^2."""
        return -XI if self.sol_type == "I" else XI

    @property
    def jm_coefficient(self) -> Fraction:
        return Fraction(4) if self.sol_type == "I" else Fraction(-8)

    @property
    def lambda_offset(self) -> Fraction:
        """C minus lambda: the constant part of the affine map lambda -> C."""
        n = Fraction(self.n_max)
        if self.sol_type == "I":
            return -n * n - n / 4 + Fraction(1, 8)
        return -n * n + 13 * n / 4 + Fraction(49, 8)

    def c_at(self, lambda_value) -> Fraction:
        """C evaluated at a concrete lambda = 3 w0^2 / (4 w^2)."""
        return lambda_value + self.lambda_offset

    def family(self) -> FamilySpec:
        return FamilySpec(3, self.n_max, s=self.s, alpha=self.alpha)


# ---------------------------------------------------------------------------
# the fourth-order operator for the surviving component
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RabiOperator:
    """L split into its lambda-free part and the trivial lambda direction.

    The full operator is base + (lambda/3) * Id: the only w0-dependence of
    L is the additive constant w0^2/4 = lambda/3.
    """

    a_hat: DiffOp
    c_hat: DiffOp
    base: DiffOp

    def at_lambda(self, lambda_value) -> DiffOp:
        return self.base + DiffOp({0: LaurentPoly.const(
            Fraction(1, 3) * lambda_value)})


def assemble_operator(two_g, cos_2t, sin_2t, energy) -> Tuple[DiffOp, DiffOp, DiffOp]:
    """Build a_hat, c_hat and the lambda-free part of L from raw constants.

    Exposed separately from the locked configuration so degenerate limits
    (zero coupling, zero angle) can be assembled for control checks.
    """
    a_hat = DiffOp({2: LaurentPoly.const(two_g), 0: LaurentPoly.x(2, two_g)})
    c_hat = DiffOp({
        2: LaurentPoly.const(-_HALF * sin_2t),
        1: LaurentPoly.x(1, cos_2t),
        0: LaurentPoly({2: _HALF * sin_2t, 0: _HALF * (cos_2t - 1)}),
    })
    base = ((a_hat + c_hat) * (a_hat - c_hat)
            + (2 * energy) * c_hat
            + (-(energy * energy)) * DiffOp.identity())
    return a_hat, c_hat, base


def build_L(config: RabiConfig) -> RabiOperator:
    """The surviving-component operator at the configuration's lock."""
    a_hat, c_hat, base = assemble_operator(
        TWO_G, COS_2T, config.sin_2t, config.energy_ratio)
    if base.order() != 4:
        raise RabiError(f"expected a fourth-order operator, got order {base.order()}")
    return RabiOperator(a_hat=a_hat, c_hat=c_hat, base=base)


def ladder_combination(config: RabiConfig) -> DiffOp:
    """The family-3 combination whose kernel carries the exact states.

    In the ladder coordinate x this is
    2 (J^-)^2 + [J^+, J^-] - 7 J^+ + a4 J^- + offset, with a4 = +4 (type I)
    or -8 (type II) and the offset equal to C - lambda.
    """
    jp, jm = family_operators(config.family())
    return (2 * (jm * jm) + commutator(jp, jm) + (-7) * jp
            + config.jm_coefficient * jm
            + DiffOp({0: LaurentPoly.const(config.lambda_offset)}))


def gauge_identity_residual(config: RabiConfig,
                            gauge: Optional[GaugeFactor] = None) -> DiffOp:
    """Difference of the two sides of the subspace-collapse identity.

    The identity states: conjugating L by the gauge factor equals one third
    of the ladder combination pulled through x = stretch * z^2.  Both sides
    carry the same trivial lambda-dependence, (lambda/3) * Id, which cancels
    in the difference; a zero residual therefore proves the identity for
    every lambda at once.  Passing an explicit gauge overrides the
    configuration's own (used as a negative control: any other gauge must
    leave a nonzero residual).
    """
    operator = build_L(config)
    chosen = gauge if gauge is not None else config.gauge
    lhs = conjugate_by_gauge(operator.base, chosen)
    rhs = Fraction(1, 3) * substitute_square(ladder_combination(config), config.stretch)
    return lhs - rhs


def verify_gauge_identity(config: RabiConfig) -> bool:
    """True iff the subspace-collapse identity holds exactly."""
    return gauge_identity_residual(config).is_zero()


# ---------------------------------------------------------------------------
# the spectral condition
# ---------------------------------------------------------------------------

def subspace_matrix(config: RabiConfig) -> List[List[Fraction]]:
    """M0: the ladder combination represented on the invariant subspace."""
    return matrix_rep(ladder_combination(config), config.family())


@dataclass
class FrequencyRoot:
    """One positive-lambda root of det(M0 + lambda*I) = 0."""

    ratio: float                      # 2w/w0 = sqrt(3/lambda)
    lambda_float: float
    lambda_interval: Tuple[Fraction, Fraction]
    minimal_poly: List[Fraction]      # monic, rational, vanishes at lambda
    multiplicity: int
    certificate: Dict[str, object]
    null_vector_floats: List[float]
    null_vector_exact: Optional[List[object]] = None   # ExtElem entries
    extension: Optional[FieldExtension] = None

    def omega0(self) -> float:
        """w0 in w = 1 units."""
        return 2.0 / self.ratio


@dataclass
class SpectralResult:
    """Exact spectral data for one configuration."""

    config: RabiConfig
    matrix: List[List[Fraction]]
    lambda_charpoly: List[Fraction]   # det(lambda*I + M0), ascending, monic
    roots: List[FrequencyRoot]
    growth: Dict[str, object]

    def ratios(self) -> List[float]:
        return [root.ratio for root in self.roots]


def bargmann_growth(config: RabiConfig) -> Dict[str, object]:
    """Gaussian growth class of the assembled eigenfunctions.

    The gauge factor contributes exp(+-eta z^2) and the confluent kernels,
    evaluated at x = stretch * z^2, grow at most like exp(|stretch| z^2)
    along the directions where the argument has positive real part (they
    are power-bounded along the opposite directions).  The worst direction
    therefore carries a Gaussian of coefficient xi - eta = sqrt2/4 for both
    types; entire functions of Gaussian type strictly below 1/2 lie inside
    the Bargmann space, so these states are normalizable.
    """
    coefficient = XI - ETA
    value = embed_to_float(coefficient)
    return {
        "gaussian_type": format_scalar(coefficient),
        "gaussian_type_float": value,
        "normalizable": value < 0.5,
    }


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def solve_frequencies(config: RabiConfig) -> SpectralResult:
    """All positive-lambda roots of det(M0 + lambda*I) = 0, exactly isolated.

    The characteristic polynomial is computed over the rationals; real
    roots are isolated with Sturm sequences, refined to 12+ digits, and
    each positive root is returned with an exactly-verified minimal factor,
    its algebraic multiplicity, a singularity certificate, and a null
    vector of M0 + lambda*I (exact over the extension field when the factor
    is irreducible there, floating-point otherwise).
    """
    m0 = subspace_matrix(config)
    size = config.dimension
    lam_poly = charpoly(mat_scale(m0, Fraction(-1)))
    if len(lam_poly) != size + 1:
        raise RabiError("characteristic polynomial has the wrong degree")

    factors, (leftover, leftover_intervals) = minimal_factors(
        lam_poly, max_subset=size)
    squarefree = squarefree_part(lam_poly)

    roots: List[FrequencyRoot] = []
    for lo, hi in isolate_real_roots(squarefree):
        lo, hi = refine_root(squarefree, lo, hi, digits=14)
        if hi <= 0:
            continue
        lam_mid = (lo + hi) / 2
        lam_float = float(lam_mid)
        minimal = _matching_factor(factors, leftover, lo, hi)
        multiplicity = _factor_multiplicity(lam_poly, minimal)
        exact_null, ext = _extension_nullspace(m0, minimal, lam_mid)
        if exact_null is not None:
            certificate: Dict[str, object] = {
                "kind": "extension-nullspace",
                "rank": size - len(exact_null),
                "dimension": size,
                "nullity": len(exact_null),
            }
            vector = exact_null[0]
            floats = [entry.to_float() for entry in vector]
        else:
            certificate = {
                "kind": "sign-change-interval",
                "interval": (str(lo), str(hi)),
                "sign_lo": _sign(poly_eval(squarefree, lo)),
                "sign_hi": _sign(poly_eval(squarefree, hi)),
                "dimension": size,
            }
            vector = None
            floats = _float_null_vector(m0, lam_float)
        roots.append(FrequencyRoot(
            ratio=math.sqrt(3.0 / lam_float),
            lambda_float=lam_float,
            lambda_interval=(lo, hi),
            minimal_poly=minimal,
            multiplicity=multiplicity,
            certificate=certificate,
            null_vector_floats=floats,
            null_vector_exact=vector,
            extension=ext,
        ))

    roots.sort(key=lambda root: root.ratio)
    roots = _deduplicate(roots)
    return SpectralResult(
        config=config,
        matrix=m0,
        lambda_charpoly=lam_poly,
        roots=roots,
        growth=bargmann_growth(config),
    )


def _matching_factor(factors, leftover, lo: Fraction, hi: Fraction) -> List[Fraction]:
    for coeffs, _intervals in factors:
        if _sign(poly_eval(coeffs, lo)) * _sign(poly_eval(coeffs, hi)) < 0:
            return list(coeffs)
    if leftover and _sign(poly_eval(leftover, lo)) * _sign(poly_eval(leftover, hi)) < 0:
        return list(leftover)
    raise RabiError("no verified factor brackets the isolated root")


def _factor_multiplicity(poly: Sequence[Fraction], factor: Sequence[Fraction]) -> int:
    from .linalg import poly_divmod
    count = 0
    current = list(poly)
    while len(current) >= len(factor):
        quotient, remainder = poly_divmod(current, factor)
        if poly_trim(remainder):
            break
        count += 1
        current = quotient
    return max(count, 1)


def _extension_nullspace(m0, minimal: List[Fraction], approx: Fraction):
    """Exact nullspace of M0 + lambda*I over Q[lambda]/(minimal), if possible.

    Returns (list of null vectors, extension) or (None, None) when the
    verified factor is reducible over the rationals, which shows up as a
    failed inversion during elimination.
    """
    try:
        ext = FieldExtension(minimal, embed=Fraction, approx=approx, name="lam")
        lam = ext.generator()
        size = len(m0)
        shifted = [
            [ext.scalar(m0[i][j]) + (lam if i == j else ext.zero())
             for j in range(size)]
            for i in range(size)
        ]
        vectors = nullspace(shifted)
        if not vectors:
            return None, None
        for vector in vectors:
            image = mat_vec(shifted, vector)
            if any(not entry.is_zero() for entry in image):
                raise RabiError("extension null vector fails re-multiplication")
        return vectors, ext
    except ZeroDivisionError:
        return None, None


def _float_null_vector(m0, lam_float: float) -> List[float]:
    matrix = np.array([[float(entry) for entry in row] for row in m0])
    shifted = matrix + lam_float * np.eye(len(m0))
    _, _, vh = np.linalg.svd(shifted)
    vector = vh[-1]
    # Normalize the largest entry to 1 for stable reporting.
    pivot = max(range(len(vector)), key=lambda i: abs(vector[i]))
    return list(vector / vector[pivot])


def _deduplicate(roots: List[FrequencyRoot]) -> List[FrequencyRoot]:
    merged: List[FrequencyRoot] = []
    for root in roots:
        if merged:
            previous = merged[-1]
            scale = max(1.0, abs(previous.ratio))
            if abs(root.ratio - previous.ratio) <= 1e-9 * scale:
                previous.multiplicity += root.multiplicity
                continue
        merged.append(root)
    return merged


# ---------------------------------------------------------------------------
# eigenfunction assembly
# ---------------------------------------------------------------------------

def _quadratic_minimal(rational: Fraction, coeff: Fraction, radicand: int) -> List[Fraction]:
    """Monic minimal polynomial of rational + coeff*sqrt(radicand)."""
    return [rational * rational - coeff * coeff * radicand, -2 * rational, Fraction(1)]


# Closed-form targets quoted alongside the reference tabulation, kept as
# (rational part, surd coefficient, radicand) triples so membership can be
# decided exactly through minimal polynomials.
CLOSED_FORM_RATIOS = {
    "I": ((Fraction(57, 20), Fraction(7, 15), 42),
          (Fraction(5, 3), Fraction(1, 30), 42),
          (Fraction(1), Fraction(0), 42)),
    "II": ((Fraction(5, 4), Fraction(1, 7), 10),
           (Fraction(31, 21), Fraction(1, 42), 10),
           (Fraction(1), Fraction(0), 10)),
}
CLOSED_FORM_LAMBDA = {
    "I": (Fraction(11, 4), Fraction(1), 42),
    "II": (Fraction(-5, 4), Fraction(1), 10),
}


def closed_form_report(result: SpectralResult) -> Dict[str, object]:
    """Membership of the quoted N=2 closed-form lambda in the computed set.

    The quoted values are quadratic surds; each computed root carries an
    exactly-verified minimal factor, so membership reduces to a polynomial
    gcd over the rationals: the surd is a root of the characteristic
    polynomial iff its quadratic minimal polynomial shares a factor with
    it.  The report records the verdict and both floats; it does not try
    to reconcile a mismatch.
    """
    config = result.config
    rational, coeff, radicand = CLOSED_FORM_LAMBDA[config.sol_type]
    target_poly = _quadratic_minimal(rational, coeff, radicand)
    target_lambda = float(rational) + float(coeff) * math.sqrt(radicand)
    shared = poly_gcd(squarefree_part(result.lambda_charpoly), target_poly)
    member = len(poly_trim(shared)) > 1
    report: Dict[str, object] = {
        "applies_to": "N=2",
        "target_lambda_float": target_lambda,
        "target_lambda_minimal_poly": [str(c) for c in target_poly],
        "member_of_root_set": member,
        "computed_lambdas": [root.lambda_float for root in result.roots],
    }
    if target_lambda > 0:
        report["target_ratio_float"] = math.sqrt(3.0 / target_lambda)
    return report


def _ratio_membership(ext: FieldExtension, ratio_elem, target) -> bool:
    rational, coeff, radicand = target
    if coeff == 0:
        return ratio_elem == ext.scalar(rational)
    poly = _quadratic_minimal(rational, coeff, radicand)
    value = ext.zero()
    power = ext.one()
    for c in poly:
        value = value + power * ext.scalar(c)
        power = power * ratio_elem
    return value.is_zero()


def assemble_eigenfunctions(result: SpectralResult) -> List[Dict[str, object]]:
    """Explicit two-component states for every root in the result.

    psi_2 is the gauge factor times the null-vector combination of the
    confluent kernels evaluated at x = stretch * z^2; psi_1 is recovered
    from it by psi_1 = (2/w0) (E + a_hat - c_hat) psi_2, computed exactly
    in the fundamental-pair representation (the global prefactor 2/w0
    equals the reported frequency ratio and is attached as a float).  For
    N=2 the coefficient ratios are additionally tested, exactly, against
    the quoted closed-form surds; the verdict is reported, not enforced.
    """
    config = result.config
    operator = build_L(config)
    gauge = config.gauge
    descriptions: List[Dict[str, object]] = []
    for root in result.roots:
        entry: Dict[str, object] = {
            "ratio": root.ratio,
            "lambda": root.lambda_float,
            "gauge": _describe_gauge(gauge),
            "kernel_argument": f"({format_scalar(config.stretch)})*z^2",
            "kernel_parameters": [
                (str(config.alpha + n), str(config.s)) for n in range(config.dimension)
            ],
        }
        if root.null_vector_exact is None:
            entry["coefficients"] = [
                {"float": value} for value in root.null_vector_floats
            ]
            entry["exact"] = False
            descriptions.append(entry)
            continue
        entry["exact"] = True
        entry["coefficients"] = [
            {"value": repr(element), "float": element.to_float()}
            for element in root.null_vector_exact
        ]
        if config.n_max == 2:
            entry["closed_form_ratio_check"] = _closed_form_ratio_check(
                root, config)
        chi = _apply_recovery_operator(root, config, operator)
        entry["psi1"] = {
            "prefactor_float": root.ratio,
            # The pair lives in the z coordinate after the pullback.
            "f_coefficient": repr(chi.r).replace("x^", "z^").replace("*x", "*z"),
            "fprime_coefficient": repr(chi.s).replace("x^", "z^").replace("*x", "*z"),
        }
        descriptions.append(entry)
    return descriptions


def _describe_gauge(gauge: GaugeFactor) -> str:
    power = "" if gauge.z_power == 0 else ("z*" if gauge.z_power == 1 else f"z^{gauge.z_power}*")
    return f"{power}exp(({format_scalar(gauge.gauss_coeff)})*z^2)"


def _closed_form_ratio_check(root: FrequencyRoot, config: RabiConfig) -> Dict[str, object]:
    ext = root.extension
    vector = root.null_vector_exact
    last = vector[-1]
    targets = CLOSED_FORM_RATIOS[config.sol_type]
    checks = []
    try:
        normalized = [entry / last for entry in vector]
    except ZeroDivisionError:
        return {"status": "last coefficient vanishes; ratios undefined"}
    for index, (target, ratio_elem) in enumerate(zip(targets, normalized)):
        rational, coeff, radicand = target
        target_float = float(rational) + float(coeff) * math.sqrt(radicand)
        checks.append({
            "index": index,
            "target_float": target_float,
            "computed_float": ratio_elem.to_float(),
            "matches_exactly": _ratio_membership(ext, ratio_elem, target),
        })
    return {"ratios": checks}


def _apply_recovery_operator(root: FrequencyRoot, config: RabiConfig,
                             operator: RabiOperator):
    """chi = (E + a_hat - c_hat) psi_2 divided by the gauge factor.

    Conjugating the recovery operator by the gauge turns the application
    into pure pair arithmetic on the kernel side: psi_1 equals the gauge
    factor times chi times 2/w0.
    """
    spec = config.family()
    ext_q = FieldExtension(
        root.minimal_poly, embed=QuadScalar,
        approx=(root.lambda_interval[0] + root.lambda_interval[1]) / 2,
        name="lam")
    lifted = [
        ext_q.element([QuadScalar(c) for c in entry.coeffs])
        for entry in root.null_vector_exact
    ]
    new_ctx = substituted_context(spec, config.stretch)
    combined = None
    for n, coefficient in enumerate(lifted):
        pair_z = substitute_pair(
            BasisElement(spec, n).to_pair(), config.stretch, new_ctx)
        term = pair_z.scaled(coefficient)
        combined = term if combined is None else combined + term
    recovery = conjugate_by_gauge(
        operator.a_hat - operator.c_hat
        + DiffOp({0: LaurentPoly.const(config.energy_ratio)}),
        config.gauge)
    return apply_op(recovery, combined)


# ---------------------------------------------------------------------------
# independent truncated-Fock oracle
# ---------------------------------------------------------------------------

def fock_matrix(omega0: float, two_g: float, cutoff: int, parity: int) -> np.ndarray:
    """Dense float Hamiltonian block for one photon-parity sector.

    Photon numbers run over parity, parity+2, ... below the cutoff; each
    carries both spin states, ordered (n, up), (n, down).  The squared
    ladder coupling changes the photon number by two and flips the spin,
    so photon parity is conserved and the two sectors decouple.
    """
    numbers = list(range(parity, cutoff, 2))
    size = 2 * len(numbers)
    matrix = np.zeros((size, size))
    for i, n in enumerate(numbers):
        matrix[2 * i, 2 * i] = n + omega0 / 2.0
        matrix[2 * i + 1, 2 * i + 1] = n - omega0 / 2.0
        if i + 1 < len(numbers):
            element = two_g * math.sqrt((n + 1) * (n + 2))
            matrix[2 * i, 2 * (i + 1) + 1] = element
            matrix[2 * (i + 1) + 1, 2 * i] = element
            matrix[2 * i + 1, 2 * (i + 1)] = element
            matrix[2 * (i + 1), 2 * i + 1] = element
    return matrix


def fock_truncation_check(config: RabiConfig, root: float, cutoff: int = 300) -> float:
    """Smallest gap between the truncated spectrum and the locked energy.

    Diagonalizes the Hamiltonian at w = 1, g = 1/(2*sqrt6) and
    w0 = 2/root in a Fock basis truncated at the cutoff, both parity
    sectors, and returns min |E_i - ((N+1)/sqrt3 - 1/2)|.  This uses no
    operator identities at all, so it is an independent check that a
    claimed frequency really carries an eigenvalue at the locked energy.
    """
    if cutoff < 100:
        raise RabiError("cutoff must be at least 100")
    omega0 = 2.0 / float(root)
    target = embed_to_float(config.energy_ratio)
    two_g = embed_to_float(TWO_G)
    best = math.inf
    for parity in (0, 1):
        eigenvalues = np.linalg.eigvalsh(fock_matrix(omega0, two_g, cutoff, parity))
        best = min(best, float(np.min(np.abs(eigenvalues - target))))
    return best


def truncation_convergence(config: RabiConfig, root: float,
                           cutoffs: Sequence[int] = (100, 200, 400)) -> List[float]:
    """Fock-check gaps at increasing cutoffs (should shrink toward zero)."""
    return [fock_truncation_check(config, root, cutoff) for cutoff in cutoffs]


# ---------------------------------------------------------------------------
# reference tabulation comparison
# ---------------------------------------------------------------------------

# Frequency ratios 2w/w0 quoted in the reference tabulation, keyed by
# (N, solution type), together with its quoted E/w row.  These are inputs
# to a comparison, not ground truth: the solver reports containment
# verdicts for them against its own root sets.
REFERENCE_FREQUENCY_RATIOS: Dict[Tuple[int, str], Tuple[float, ...]] = {
    (2, "I"): (0.44315,),
    (2, "II"): (0.79838,),
    (4, "I"): (1.68889,),
    (4, "II"): (0.79838,),
    (5, "I"): (3.03496,),
    (5, "II"): (2.23006, 2.75234),
    (6, "I"): (2.72766, 3.60267),
    (6, "II"): (3.43545,),
    (7, "I"): (2.10305, 3.74421, 3.90266),
    (7, "II"): (2.66128, 4.08801),
}

REFERENCE_ENERGY_RATIOS: Dict[int, float] = {
    2: 1.23205,
    4: 2.38675,
    5: 2.96410,
    6: 3.54145,
    7: 4.11880,
}

FREQUENCY_TOLERANCE = 5e-5
ENERGY_TOLERANCE = 1e-5


def frequency_table_report(config: RabiConfig,
                           result: Optional[SpectralResult] = None) -> Dict[str, object]:
    """Compare the computed root set against the reference tabulation.

    For every quoted ratio the report records the nearest computed root
    and whether it lies within the acceptance tolerance; the quoted E/w is
    compared against the exact (N+1)/sqrt3 - 1/2.  Status "ok" requires
    every containment to hold; otherwise "reference-discrepancy" (the
    solver's own internal checks all being exact, a miss means the quoted
    number does not belong to the computed spectrum).
    """
    if result is None:
        result = solve_frequencies(config)
    computed = result.ratios()
    quoted = REFERENCE_FREQUENCY_RATIOS.get((config.n_max, config.sol_type), ())
    entries = []
    all_contained = True
    for value in quoted:
        gap = min((abs(value - ratio) for ratio in computed), default=math.inf)
        contained = gap <= FREQUENCY_TOLERANCE
        all_contained = all_contained and contained
        entries.append({
            "listed": value,
            "nearest_computed_gap": gap,
            "contained": contained,
        })
    energy_float = embed_to_float(config.energy_ratio)
    energy_quoted = REFERENCE_ENERGY_RATIOS.get(config.n_max)
    energy_ok = (energy_quoted is None
                 or abs(energy_float - energy_quoted) <= ENERGY_TOLERANCE)
    report: Dict[str, object] = {
        "n": config.n_max,
        "dimension": config.dimension,
        "type": config.sol_type,
        "computed_ratios": computed,
        "listed_ratios": list(quoted),
        "containment": entries,
        "energy_ratio": energy_float,
        "energy_ratio_exact": format_scalar(config.energy_ratio),
        "energy_listed": energy_quoted,
        "energy_ok": energy_ok,
        "growth": result.growth,
    }
    if config.n_max == 2:
        report["closed_form"] = closed_form_report(result)
    report["status"] = "ok" if (all_contained and energy_ok) else "reference-discrepancy"
    return report
