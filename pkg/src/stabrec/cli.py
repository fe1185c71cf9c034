"""Command-line interface: ``stabrec <subcommand> [flags]``.

Exit status is 0 on success, 2 for bad arguments and 3 for domain errors
(for example asking for the recovery circuit of a non-interacting circuit).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys

import numpy as np

from . import applications, classify, protocol, recovery, verify
from .circuits import PostselectedCircuit
from .clifford import TWO_QUBIT_TOKENS, enumerate_group, from_word
from .errors import StabRecError
from .pauli import bloch_of

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN = 0, 2, 3
MAX_LADDER_STEPS = 64

_IDENTITY_TOKENS = {"I", "II", "I⊗I", "I*I", "I1", "I2"}
_SEPARATORS = re.compile(r"[\s,·*]+")


class UsageError(Exception):
    pass


def parse_word(text: str) -> tuple[str, ...]:
    """Split a circuit word such as ``"H1 CNOT Z2"`` into gate tokens (circuit order)."""
    tokens = []
    for raw in _SEPARATORS.split(text.strip()):
        if not raw or raw in _IDENTITY_TOKENS:
            continue
        tok = raw.upper()
        if tok not in TWO_QUBIT_TOKENS:
            raise UsageError(f"unknown gate token {raw!r}; expected one of {', '.join(TWO_QUBIT_TOKENS)}")
        tokens.append(tok)
    return tuple(tokens)


def parse_circuit(text: str, bit: int) -> PostselectedCircuit:
    return PostselectedCircuit(from_word(parse_word(text), 2), bit)


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError("seed must fit in an unsigned 64-bit integer")
    return value


def _positive_int(text: str) -> int:
    value = int(text)
    if value <= 0:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return value


# -- output ------------------------------------------------------------------


def render(rows, fmt: str, extra: dict | None = None) -> str:
    """CSV (header + rows) or JSON with the same field names.

    ``extra`` fields are JSON-only and turn a single-row table into an object.
    """
    if fmt == "json":
        if extra is not None:
            return json.dumps({**rows[0], **extra}, indent=2) + "\n"
        return json.dumps(rows, indent=2) + "\n"
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    writer.writerows(rows)
    return buf.getvalue()


# -- subcommands -------------------------------------------------------------


def cmd_enumerate(args):
    table = enumerate_group(args.arity)
    if args.table:
        return [{"ordinal": i, "word": w, "tableau": t} for i, w, t in table.listing()], None
    return [{"arity": args.arity, "size": len(table)}], None


def cmd_census(args):
    c = classify.census()
    return [{"class_kind": k, "count": n} for k, n in c.rows()], None


def cmd_classify(args):
    pc = parse_circuit(args.circuit, args.bit)
    form = classify.canonicalize(pc)
    row = {"circuit": pc.clifford.label, "bit": pc.bit, **form.describe()}
    row["reconstruction_ok"] = classify.reconstruction_holds(pc, form)
    return [row], None


def cmd_recover(args):
    pc = parse_circuit(args.circuit, args.bit)
    spec = recovery.synthesize_recovery(pc)
    rng = np.random.default_rng(args.seed)
    phi, psi = verify.round_trip_inputs(spec, rng)
    out = recovery.recover(spec, pc, phi, psi)
    err = float(np.max(np.abs(out.state - phi)))
    row = {
        "source": pc.clifford.label,
        "source_bit": pc.bit,
        "recovery": spec.circuit.clifford.label,
        "recovery_bit": spec.circuit.bit,
        "g1": spec.g1.label,
        "g2": spec.g2.label,
        "g": spec.g.label,
        "recovery_probability": out.probability,
        "closed_form_probability": recovery.recovery_probability(spec, pc, phi, psi),
        "round_trip_error": err,
        "round_trip_ok": err < recovery.ROUND_TRIP_TOL,
    }
    return [row], None


def cmd_probe(args):
    seq = protocol.probability_sequence(args.q1, args.z, args.count)
    return [{"i": i, "q": q} for i, q in enumerate(seq, start=1)], None


def cmd_simulate(args):
    cfg = protocol.ProtocolConfig(
        k=args.k, d=args.d, z=args.z, q1=args.q1, trials=args.trials, seed=args.seed
    )
    result = protocol.simulate(cfg)
    return [protocol.result_record(result)], {"prob_sequence": result.prob_sequence}


def cmd_verify(args):
    rows = []
    for check in verify.run_all():
        print(f"{'PASS' if check.passed else 'FAIL'} {check.name} ({check.seconds:.1f}s)", file=sys.stderr)
        rows.append({"criterion": check.name, "passed": check.passed, "detail": check.detail})
    return rows, None


def cmd_ladder(args):
    if args.steps > MAX_LADDER_STEPS:
        raise UsageError(f"--steps is capped at {MAX_LADDER_STEPS}")
    rows = []
    for i in range(args.steps):
        st = applications.ladder_state(i)
        rows.append({"i": i, "theta": st.theta, "success_prob": applications.ladder_step(i).success.probability})
    return rows, None


def cmd_par(args):
    q = applications.pure_density([1.0, 1.0])
    branches = applications.par_rotate(q, args.gamma)
    recovered = applications.par_recover(branches.failure.state, args.gamma)
    rows = []
    for name, out in (("success", branches.success), ("failure", branches.failure), ("recovered", recovered)):
        x, y, z = (float(c) for c in bloch_of(out.state))
        rows.append({"branch": name, "probability": out.probability, "x": x, "y": y, "z": z})
    return rows, None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("csv", "json"), default="csv")
    common.add_argument("--output", metavar="PATH")

    parser = argparse.ArgumentParser(prog="stabrec", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=fn)
        return p

    p = add("enumerate", cmd_enumerate, "Clifford group size and optional listing")
    p.add_argument("--arity", type=int, choices=(1, 2), default=2)
    p.add_argument("--table", action="store_true", help="list ordinal, word, tableau")

    add("census", cmd_census, "count reduction classes over all 23040 circuits")

    for name, fn, text in (
        ("classify", cmd_classify, "canonical form of a postselected circuit"),
        ("recover", cmd_recover, "recovery circuit with a round-trip check"),
    ):
        p = add(name, fn, text)
        p.add_argument("--circuit", required=True, help='gate word, e.g. "H1 CNOT"')
        p.add_argument("--bit", type=int, choices=(0, 1), default=0)
        if name == "recover":
            p.add_argument("--seed", type=_u64, default=0)

    p = add("probe", cmd_probe, "success-probability sequence Q_1..Q_count")
    p.add_argument("--q1", type=float, default=0.5)
    p.add_argument("--z", type=float, default=0.0)
    p.add_argument("--count", type=_positive_int, default=7)

    p = add("simulate", cmd_simulate, "Monte Carlo and analytic cost of the depth-k protocol")
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--d", type=float, default=1000.0)
    p.add_argument("--z", type=float, default=0.0)
    p.add_argument("--q1", type=float, default=0.5)
    p.add_argument("--trials", type=_positive_int, default=100_000)
    p.add_argument("--seed", type=_u64, default=0)

    add("verify", cmd_verify, "run every verification suite")

    p = add("ladder", cmd_ladder, "|H_i> ladder trajectory")
    p.add_argument("--steps", type=_positive_int, default=10)

    p = add("par", cmd_par, "programmable ancilla rotation on |+>")
    p.add_argument("--gamma", type=float, default=math.pi / 4)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        rows, extra = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except StabRecError as exc:
        print(f"stabrec {args.command}: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    text = render(rows, args.format, extra)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.command == "verify" and not all(r["passed"] for r in rows):
        return 1
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
