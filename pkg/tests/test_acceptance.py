"""Acceptance gate: one test per release criterion, stated tolerances only.

Two criteria compare against a reference tabulation of two-photon Rabi
frequencies (and the same tabulation drives the Fock-basis criterion).
Every internal and independent check available here (exact operator
identities, exact null vectors, and a truncated-Fock diagonalization that
shares no code with the symbolic side) locates the frequency locks at the
computed root sets, not at the quoted values, for every dimension and both
solution types.  Those two tests therefore fail, on purpose: the stated
tolerance is applied as-is, and docs/discrepancies.md records both value
sets.  Loosening the tests or swapping in the computed values would hide a
real disagreement, so they stay red.
"""

import time
from fractions import Fraction

from qes.diffop import DiffOp, commutator
from qes.families import (FamilySpec, family_operators, matrix_rep,
                          operator_in_span, solve_preserving, verify_invariance)
from qes.laurent import LaurentPoly
from qes.linalg import mat_commutator
from qes.rabi import (REFERENCE_FREQUENCY_RATIOS, RabiConfig,
                      fock_truncation_check, frequency_table_report,
                      solve_frequencies, verify_gauge_identity)
from qes.sampling import sample_grid
from qes.structure import closure_suite
from qes.structure import verify_structure_relations  # noqa: F401 (re-export guard)

F = Fraction

SIZES = (0, 1, 2, 3, 4, 5)
SAMPLES = 8
FREQUENCY_TOLERANCE = 5e-5
ENERGY_TOLERANCE = 1e-5


def _verdict(tag: str, ok: bool, detail: str) -> None:
    print(f"[{tag}] {'PASS' if ok else 'FAIL'}: {detail}")


def test_criterion_1_invariance_suite():
    started = time.perf_counter()
    applications = 0
    failures = []
    for family_id in (1, 2, 3, 4, 5, 6):
        for n_max in SIZES:
            for params in sample_grid(family_id, n_max, SAMPLES, seed=0):
                report = verify_invariance(FamilySpec(family_id, n_max, **params))
                applications += report["checks"]
                if not report["ok"]:
                    failures.append(report)
    elapsed = time.perf_counter() - started
    ok = not failures and elapsed < 30.0
    _verdict("criterion 1: exact invariance, 6 families x N<=5 x 8 samples", ok,
             f"{applications} ladder applications, all coefficients exact, "
             f"{elapsed:.1f}s (limit 30s)")
    assert elapsed < 30.0
    assert not failures, failures[:2]


def test_criterion_2_preserving_operator_rederivation():
    started = time.perf_counter()
    checked = []
    for n_max in (0, 1, 2, 3):
        spec = FamilySpec(1, n_max, s=F(7, 3))
        found = solve_preserving(spec, max_order=2, degree_bound=2)
        j_plus, j_minus = family_operators(spec)
        dim_ok = found["dimension_mod_constants"] == 2
        span_ok = operator_in_span(found, j_plus) and operator_in_span(found, j_minus)
        # The second-order raising generator must carry the drift term
        # (s - 2N) x d/dx; shifting that coefficient must leave the space.
        drift = j_plus.coeff(1).coeff(1)
        drift_ok = drift == spec.s - 2 * n_max
        shifted = j_plus + DiffOp({1: LaurentPoly.x()})
        cutoff_ok = not operator_in_span(found, shifted)
        checked.append(dim_ok and span_ok and drift_ok and cutoff_ok)
    elapsed = time.perf_counter() - started
    ok = all(checked)
    _verdict("criterion 2: preserving operators re-derived", ok,
             f"2-dimensional modulo constants at N=0..3, both ladder operators "
             f"in the span, drift coefficient s-2N pinned, {elapsed:.1f}s")
    assert ok


def test_criterion_3_commutator_closure_suite():
    started = time.perf_counter()
    verdicts = {}
    bad = []
    for family_id in (1, 2, 3, 4, 5, 6):
        suite = closure_suite(family_id, samples=SAMPLES, seed=0)
        verdicts[family_id] = suite["status"]
        if suite["status"] == "ok":
            continue
        # A tabulation mismatch is acceptable only when the independently
        # derived constants are shown and close the relations exactly.
        documented = (suite["status"] == "reference-discrepancy"
                      and suite["derived_failures"] == 0
                      and suite["mismatched_constants"]
                      and all(suite["derived"][name] != suite["catalog"][name]
                              for name in suite["mismatched_constants"]))
        if not documented:
            bad.append((family_id, suite["status"]))
    elapsed = time.perf_counter() - started
    ok = not bad and elapsed < 60.0
    summary = ", ".join(f"k={fid}:{status}" for fid, status in verdicts.items())
    _verdict("criterion 3: closure relations at 8 samples", ok,
             f"{summary}; every mismatch ships derived constants with exactly "
             f"zero residual, {elapsed:.1f}s (limit 60s)")
    assert elapsed < 60.0
    assert not bad, bad


def test_criterion_4_gauge_identities():
    started = time.perf_counter()
    failures = [(n_max, sol_type)
                for sol_type in ("I", "II")
                for n_max in range(8)
                if not verify_gauge_identity(RabiConfig(n_max, sol_type))]
    elapsed = time.perf_counter() - started
    ok = not failures
    _verdict("criterion 4: gauge identities, N=0..7, both types", ok,
             f"operator equality exact over the quadratic-surd field, "
             f"{elapsed:.1f}s")
    assert not failures, failures


def test_criterion_5_reference_frequency_table():
    started = time.perf_counter()
    # Pin the tabulated inputs this criterion quotes as examples.
    assert REFERENCE_FREQUENCY_RATIOS[(2, "I")] == (0.44315,)
    assert REFERENCE_FREQUENCY_RATIOS[(7, "I")] == (2.10305, 3.74421, 3.90266)
    results = {}
    missed = []
    energy_bad = []
    closed_form_seen = False
    for n_max in (2, 4, 5, 6, 7):
        for sol_type in ("I", "II"):
            config = RabiConfig(n_max, sol_type)
            report = frequency_table_report(config)
            results[(n_max, sol_type)] = report
            for entry in report["containment"]:
                if entry["nearest_computed_gap"] > FREQUENCY_TOLERANCE:
                    missed.append((n_max, sol_type, entry["listed"],
                                   entry["nearest_computed_gap"]))
            if not report["energy_ok"]:
                energy_bad.append((n_max, sol_type))
            closed_form_seen = closed_form_seen or "closed_form" in report
    elapsed = time.perf_counter() - started
    worst = max((gap for *_, gap in missed), default=0.0)
    ok = not missed and not energy_bad and closed_form_seen and elapsed < 10.0
    _verdict("criterion 5: quoted frequency table", ok,
             f"E/w exact formula matches all rows within 1e-5; closed-form "
             f"membership reported; containment within 5e-5 fails for all "
             f"{len(missed)} quoted ratios (largest nearest-root gap "
             f"{worst:.2e}); {elapsed:.1f}s (limit 10s)")
    assert elapsed < 10.0
    assert closed_form_seen
    assert not energy_bad, energy_bad
    assert not missed, (
        "no quoted frequency ratio lies within 5e-5 of the computed root set; "
        "the computed roots satisfy the exact operator identities and the "
        "independent Fock check (criterion 6 output), the quoted ones do not: "
        f"{missed}")


def test_criterion_6_independent_fock_oracle():
    started = time.perf_counter()
    gaps = []
    control = []
    for n_max in (2, 4):
        for sol_type in ("I", "II"):
            config = RabiConfig(n_max, sol_type)
            for listed in REFERENCE_FREQUENCY_RATIOS[(n_max, sol_type)]:
                gaps.append((n_max, sol_type, listed,
                             fock_truncation_check(config, listed, cutoff=300)))
            computed = solve_frequencies(config).ratios()
            control.extend(fock_truncation_check(config, r, cutoff=300)
                           for r in computed)
    elapsed = time.perf_counter() - started
    worst = max(gap for *_, gap in gaps)
    control_worst = max(control)
    ok = worst <= ENERGY_TOLERANCE and elapsed < 60.0
    _verdict("criterion 6: truncated-Fock spectrum at quoted frequencies", ok,
             f"cutoff 300, dims 3 and 5: smallest eigenvalue gap at the quoted "
             f"frequencies is {min(gap for *_, gap in gaps):.2e} (worst "
             f"{worst:.2e}, tolerance 1e-5); at the computed roots the same "
             f"oracle reaches {control_worst:.2e}; {elapsed:.1f}s (limit 60s)")
    assert elapsed < 60.0
    assert control_worst < 1e-9  # the oracle itself locks onto the computed roots
    assert worst <= ENERGY_TOLERANCE, (
        "the truncated-Fock spectrum has no eigenvalue within 1e-5 of the "
        "locked energy at any quoted frequency, while the computed roots pass "
        f"the same check at {control_worst:.2e}: {gaps}")


def test_criterion_7_representation_homomorphism():
    started = time.perf_counter()
    failures = []
    pairs = 0
    for family_id in (1, 2, 3, 4, 5, 6):
        for n_max in (1, 3):
            params = sample_grid(family_id, n_max, 1, seed=13)[0]
            spec = FamilySpec(family_id, n_max, **params)
            ops = family_operators(spec)
            reps = [matrix_rep(op, spec) for op in ops]
            for i, a in enumerate(ops):
                for j, b in enumerate(ops):
                    pairs += 1
                    lhs = matrix_rep(commutator(a, b), spec)
                    rhs = mat_commutator(reps[i], reps[j])
                    if lhs != rhs:
                        failures.append((family_id, n_max, i, j))
    elapsed = time.perf_counter() - started
    ok = not failures
    _verdict("criterion 7: matrix representation is a homomorphism", ok,
             f"rep([A,B]) equals [rep(A),rep(B)] exactly for {pairs} operator "
             f"pairs, {elapsed:.1f}s")
    assert not failures, failures
