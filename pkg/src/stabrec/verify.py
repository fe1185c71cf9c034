"""End-to-end checks of the library's claims, used by ``stabrec verify``."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass

import numpy as np

from . import applications, classify, protocol, recovery
from .circuits import PostselectedCircuit
from .clifford import enumerate_group
from .pauli import bloch_of, pure_density

REFERENCE_V = {
    ("11", 1): 0.5841, ("12", 1): 0.7338, ("13", 1): 0.8957,
    ("21", 1): 0.7252, ("22", 1): 0.8296, ("23", 1): 0.9354,
    ("31", 1): 0.8678, ("32", 1): 0.9205, ("33", 1): 0.9708,
    ("11", -1): 0.0463, ("12", -1): -0.2183, ("13", -1): -0.6260,
    ("21", -1): 0.2879, ("22", -1): 0.0280, ("23", -1): -0.4501,
    ("31", -1): 0.6055, ("32", -1): 0.4083, ("33", -1): -0.0792,
}


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    seconds: float


# -- random instances --------------------------------------------------------


def random_pure_state(rng: np.random.Generator) -> np.ndarray:
    return pure_density(rng.normal(size=2) + 1j * rng.normal(size=2))


def random_mixed_state(rng: np.random.Generator) -> np.ndarray:
    """Reduced first-qubit state of a Haar-random two-qubit pure state."""
    v = rng.normal(size=4) + 1j * rng.normal(size=4)
    v = (v / np.linalg.norm(v)).reshape(2, 2)
    return v @ v.conj().T


def random_interacting(rng: np.random.Generator) -> PostselectedCircuit:
    table = enumerate_group(2)
    while True:
        pc = PostselectedCircuit(table[int(rng.integers(len(table)))], int(rng.integers(2)))
        if classify.is_interacting(pc):
            return pc


def round_trip_inputs(spec, rng: np.random.Generator, mixed: bool = False, z_max: float = 0.999):
    """Random ``(φ, ψ)`` for a recovery spec, with ``|<ψ|G†ZG|ψ>| < z_max``."""
    while True:
        psi = random_pure_state(rng)
        if abs(recovery.resource_z(spec, psi)) < z_max:
            break
    phi = random_mixed_state(rng) if mixed else random_pure_state(rng)
    return phi, psi


def round_trip_instances(rng: np.random.Generator, count: int, mixed: bool, z_max: float = 0.999):
    """Yield ``count`` tuples ``(circuit, spec, φ, ψ)`` over random interacting circuits."""
    for _ in range(count):
        pc = random_interacting(rng)
        spec = recovery.synthesize_recovery(pc)
        phi, psi = round_trip_inputs(spec, rng, mixed, z_max)
        yield pc, spec, phi, psi


# -- checks ------------------------------------------------------------------


def _timed(name, fn) -> CheckResult:
    t0 = time.perf_counter()
    passed, detail = fn()
    return CheckResult(name, bool(passed), detail, time.perf_counter() - t0)


def check_group_orders():
    n1, n2 = len(enumerate_group(1)), len(enumerate_group(2))
    return n1 == 24 and n2 == 11520, f"|C1|={n1} |C2|={n2}"


def check_census():
    c = classify.census()
    ok = (c.projector_classes, c.interacting_classes, c.trivial_classes, c.swap_classes,
          c.strict_interacting_classes) == (30, 18, 6, 6, 432)
    return ok, "; ".join(f"{k}={v}" for k, v in c.rows())


def check_canonical_soundness():
    bad = sum(not classify.reconstruction_holds(pc) for pc in classify.all_postselected_circuits())
    return bad == 0, f"{bad} of 23040 reconstructions failed"


def check_round_trip_and_closed_form(seed: int = 2024):
    rng = np.random.default_rng(seed)
    worst_state = worst_prob = 0.0
    n = 0
    for mixed, count in ((False, 1000), (True, 200)):
        for pc, spec, phi, psi in round_trip_instances(rng, count, mixed):
            out = recovery.recover(spec, pc, phi, psi)
            worst_state = max(worst_state, float(np.max(np.abs(out.state - phi))))
            closed = recovery.recovery_probability(spec, pc, phi, psi)
            worst_prob = max(worst_prob, abs(closed - out.probability))
            n += 1
    ok = worst_state < 1e-9 and worst_prob < 1e-12
    return ok, f"{n} instances; max state error {worst_state:.2e}; max Q error {worst_prob:.2e}"


def check_recovery_rates():
    got = [recovery.recovery_rate(0.5, math.sqrt(z2)) for z2 in (0.96, 0.50, 0.04, 0.0)]
    want = [0.02, 0.25, 0.48, 0.5]
    ok = all(abs(g - w) < 1e-12 for g, w in zip(got, want))
    return ok, "rates " + ", ".join(f"{g:.12g}" for g in got)


def check_distinctness_table():
    rows = recovery.distinctness_table()
    mismatches = [r.lambda03 for r in rows if round(r.v, 4) != REFERENCE_V[(r.label, r.sign)]]
    gap = recovery.minimum_signed_gap(rows)
    return not mismatches and gap > 1e-3, f"{len(mismatches)} mismatches; min gap among ±v {gap:.4f}"


def check_uniqueness():
    reps = classify.class_representatives(classify.FormKind.INTERACTING)
    failed = [str(lam) for lam, pc in reps.items() if not recovery.verify_uniqueness(pc)]
    return len(reps) == 18 and not failed, f"{len(reps)} classes; failures: {failed or 'none'}"


def check_protocol(seed: int = 7):
    notes = []
    ok = True
    for d in (10, 100, 1000, 10000):
        exact = protocol.analytic_cost(protocol.ProtocolConfig(k=2, d=d))
        ok &= exact == 2 * (d + 1)
        notes.append(f"N2(d={d})={exact:g}")
    r2 = protocol.simulate(protocol.ProtocolConfig(k=2, d=10, seed=seed))
    ok &= abs(r2.n_k - 22) / 22 < 0.02
    cfg3 = protocol.ProtocolConfig(k=3, d=1000, z=0.0, seed=seed)
    a3 = protocol.analytic_cost(cfg3)
    r3 = protocol.simulate(cfg3)
    ok &= abs(a3 - 1503) < 1e-9 and abs(r3.n_k - a3) / a3 < 0.015
    notes.append(f"MC k=2 {r2.n_k:.2f}; MC k=3 {r3.n_k:.1f} vs {a3:.1f}")
    return ok, "; ".join(notes)


def check_recursion():
    flat = protocol.probability_sequence(0.5, 0.0, 50)
    seq = protocol.probability_sequence(0.5, math.sqrt(0.96), 20)
    fixed = (1 - math.sqrt(0.96)) / 2
    # strictly decreasing in exact arithmetic; stalls once it hits double precision
    decreasing = all(a >= b for a, b in zip(seq, seq[1:])) and seq[0] > seq[-1]
    ok = all(q == 0.5 for q in flat) and decreasing and abs(seq[-1] - fixed) < 1e-6
    return ok, f"Q_20={seq[-1]:.9f} fixed point {fixed:.9f}"


def check_demos(seed: int = 11):
    p0 = applications.ladder_step(0).success.probability
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(100):
        q = random_pure_state(rng)
        gamma = float(rng.uniform(0, 2 * math.pi))
        failed = applications.par_rotate(q, gamma).failure.state
        back = applications.par_recover(failed, gamma).state
        worst = max(worst, float(np.max(np.abs(back - q))))
    ok = abs(p0 - 0.75) < 1e-12 and worst < 1e-9
    return ok, f"ladder Q0={p0:.15f}; PAR max error {worst:.2e}"


SUITES = [
    ("group_orders", check_group_orders),
    ("census", check_census),
    ("canonical_soundness", check_canonical_soundness),
    ("round_trip_closed_form", check_round_trip_and_closed_form),
    ("recovery_rates", check_recovery_rates),
    ("distinctness_table", check_distinctness_table),
    ("uniqueness", check_uniqueness),
    ("protocol", check_protocol),
    ("recursion", check_recursion),
    ("demos", check_demos),
]


def run_all() -> list[CheckResult]:
    return [_timed(name, fn) for name, fn in SUITES]


def bloch_row(state) -> tuple[float, float, float]:
    x, y, z = bloch_of(state)
    return float(x), float(y), float(z)
