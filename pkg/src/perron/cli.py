"""Command line front end: analyze, certify, converge, gelfand.

Reports are plain text on stdout, either aligned tables with key: value
summary lines or comma-separated rows (``--format csv``).  Output is a
pure function of the inputs and flags, byte for byte.

Exit codes: 0 success or PASS, 1 a checked invariant failed, 2 unreadable
or malformed input, 3 precondition violation (wrong matrix structure for
the command, bad sequence, ...).
"""

import argparse
import sys

from . import harness, matcore, perturb, solver, structure

__all__ = ["main", "console_main"]

_f = matcore.format_float


def _yesno(flag: bool) -> str:
    return "yes" if flag else "no"


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}")
    if not value > 0.0:
        raise argparse.ArgumentTypeError(f"must be positive: {text}")
    return value


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1: {text}")
    return value


def _schedule(text: str) -> tuple[str, float]:
    # "inv-k", "inv-k2" or "geom:GAMMA"; gamma is only meaningful for geom
    if text in ("inv-k", "inv-k2"):
        return text, 0.5
    if text.startswith("geom:"):
        try:
            gamma = float(text[len("geom:"):])
        except ValueError:
            raise argparse.ArgumentTypeError(f"bad geom ratio in {text!r}")
        if not 0.0 < gamma < 1.0:
            raise argparse.ArgumentTypeError(f"geom ratio must be in (0, 1): {gamma}")
        return "geom", gamma
    raise argparse.ArgumentTypeError(
        f"unknown schedule {text!r}; use inv-k, inv-k2 or geom:GAMMA"
    )


def _alpha_list(text: str) -> list[float]:
    alphas = []
    for token in text.split(","):
        token = token.strip()
        if not token:
            continue
        try:
            value = float(token)
        except ValueError:
            raise argparse.ArgumentTypeError(f"not a number: {token!r}")
        if not value > 0.0:
            raise argparse.ArgumentTypeError(f"alphas must be positive: {token}")
        alphas.append(value)
    if not alphas:
        raise argparse.ArgumentTypeError("empty alpha list")
    return alphas


def _emit_pairs(pairs, fmt: str) -> None:
    # key: value lines in table mode, key,value in csv mode; list values
    # are space-joined (table) or semicolon-joined (csv) to keep csv rows
    # two columns wide
    for key, value in pairs:
        if isinstance(value, list):
            value = (" " if fmt == "table" else ";").join(value)
        if fmt == "table":
            print(f"{key}: {value}")
        else:
            print(f"{key},{value}")


def cmd_analyze(args) -> int:
    a = matcore.read_matrix_file(args.matrix, nonneg=True)
    fnf = structure.frobenius_normal_form(a)
    index = structure.nilpotency_index(a)
    cert = solver.perron_root(a, tol=args.tol, max_iter=args.max_iter)
    pairs = [
        ("n", str(a.shape[0])),
        ("irreducible", _yesno(structure.is_irreducible(a))),
        ("nilpotent", _yesno(index is not None)),
    ]
    if index is not None:
        pairs.append(("nilpotency_index", str(index)))
    pairs += [
        ("block_count", str(len(fnf.blocks))),
        ("block_sizes", [str(s) for s in fnf.block_sizes]),
        ("permutation", [str(i) for i in fnf.perm]),
        ("rho_lo", _f(cert.lo)),
        ("rho_hi", _f(cert.hi)),
        ("converged", _yesno(cert.converged)),
        ("iterations", str(cert.iterations)),
    ]
    if cert.right_vector is not None:
        pairs += [
            ("right_vector", [_f(v) for v in cert.right_vector]),
            ("left_vector", [_f(v) for v in cert.left_vector]),
            ("q_star", _f(solver.q_star(cert))),
            ("residual", _f(cert.residual)),
        ]
    _emit_pairs(pairs, args.format)
    return 0


def cmd_certify(args) -> int:
    a = matcore.read_matrix_file(args.matrix, nonneg=True)
    a_prime = matcore.read_matrix_file(args.perturbed, nonneg=True)
    if not structure.is_irreducible(a):
        print(
            "error: base matrix is reducible, so the continuity bound does not "
            "apply; run `perron analyze` to see its block structure",
            file=sys.stderr,
        )
        return 3
    pb = perturb.continuity_certificate(
        a, a_prime, tol=args.tol, max_iter=args.max_iter
    )
    prime_cert = solver.perron_root(a_prime, tol=args.tol, max_iter=args.max_iter)
    # the perturbed radius lies in prime_cert and must lie in the
    # enclosure, so the two intervals have to intersect
    passed = prime_cert.lo <= pb.enclosure[1] and prime_cert.hi >= pb.enclosure[0]
    pairs = [
        ("n", str(a.shape[0])),
        ("rho_lo", _f(pb.base.lo)),
        ("rho_hi", _f(pb.base.hi)),
        ("q_star", _f(pb.q_star)),
        ("e_norm", _f(pb.e_norm)),
        ("norm", pb.norm),
        ("bound", _f(pb.bound)),
        ("enclosure_lo", _f(pb.enclosure[0])),
        ("enclosure_hi", _f(pb.enclosure[1])),
        ("rho_prime_lo", _f(prime_cert.lo)),
        ("rho_prime_hi", _f(prime_cert.hi)),
        ("soundness", "PASS" if passed else "FAIL"),
    ]
    _emit_pairs(pairs, args.format)
    return 0 if passed else 1


def cmd_converge(args) -> int:
    base = matcore.read_matrix_file(args.base, nonneg=True)
    direction = matcore.read_matrix_file(args.direction)
    rule, gamma = args.schedule
    spec = harness.SequenceSpec(
        base=base,
        direction=direction,
        rule=rule,
        coeff=args.coeff,
        gamma=gamma,
        count=args.count,
        clamp=args.clamp,
    )
    if structure.is_nilpotent(base):
        trace = harness.run_nilpotent_trace(spec, tol=args.tol, max_iter=args.max_iter)
    elif structure.is_irreducible(base):
        trace = harness.run_irreducible_trace(
            spec, tol=args.tol, max_iter=args.max_iter
        )
    else:
        trace = harness.run_reducible_trace(spec, tol=args.tol, max_iter=args.max_iter)
    print(harness.format_convergence_trace(trace, args.format))
    if args.format == "table":
        print(f"kind: {trace.kind}")
        if trace.nilpotency is not None:
            print(f"nilpotency_index: {trace.nilpotency}")
        if trace.spectral_block_index is not None:
            print(f"spectral_block: {trace.spectral_block_index}")
        print(f"rho_lo: {_f(trace.base_cert.lo)}")
        print(f"rho_hi: {_f(trace.base_cert.hi)}")
        if trace.final_deviation is not None:
            print(f"final_deviation: {_f(trace.final_deviation)}")
            print(f"final_threshold: {_f(trace.final_threshold)}")
        print(f"result: {'PASS' if trace.ok else 'FAIL'}")
    return 0 if trace.ok else 1


def cmd_gelfand(args) -> int:
    x = matcore.read_matrix_file(args.matrix, nonneg=True)
    trace = harness.gelfand_trace(x, args.m_max, tol=args.tol, max_iter=args.max_iter)
    demo = harness.nonuniformity_demo(
        x, args.m_max, args.alphas, tol=args.tol, max_iter=args.max_iter
    )
    if args.format == "table":
        print(f"rho_lo: {_f(trace.cert.lo)}")
        print(f"rho_hi: {_f(trace.cert.hi)}")
    print(harness.format_gelfand_trace(trace, args.format))
    if demo.vacuous:
        note = (
            f"scaling demo skipped: f_m matches the certified radius at "
            f"m={demo.m} (gap {_f(demo.residual)})"
        )
        print(("note: " if args.format == "table" else "# ") + note)
    else:
        print()
        print(harness.format_nonuniformity_demo(demo, args.format))
    ok = trace.ok and demo.ok
    if args.format == "table":
        print(f"result: {'PASS' if ok else 'FAIL'}")
    return 0 if ok else 1


def _add_common(sp) -> None:
    sp.add_argument(
        "--tol", type=_positive_float, default=solver.DEFAULT_TOL,
        help="target width of certified intervals (default 1e-12)",
    )
    sp.add_argument(
        "--max-iter", type=_positive_int, default=solver.DEFAULT_MAX_ITER,
        help="iteration cap per certification (default 1000000)",
    )
    sp.add_argument(
        "--format", choices=("table", "csv"), default="table",
        help="aligned table or comma-separated rows",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="perron",
        description="Certified spectral analysis of nonnegative matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser(
        "analyze", help="structure and certified radius of one matrix"
    )
    sp.add_argument("matrix", help="matrix file")
    _add_common(sp)
    sp.set_defaults(func=cmd_analyze)

    sp = sub.add_parser(
        "certify", help="continuity bound for a perturbed matrix"
    )
    sp.add_argument("matrix", help="irreducible base matrix file")
    sp.add_argument("perturbed", help="perturbed nonnegative matrix file")
    _add_common(sp)
    sp.set_defaults(func=cmd_certify)

    sp = sub.add_parser(
        "converge", help="trace certified radii along a matrix sequence"
    )
    sp.add_argument("base", help="limit matrix file")
    sp.add_argument("direction", help="perturbation direction file (any sign)")
    sp.add_argument(
        "--schedule", type=_schedule, default=("inv-k", 0.5),
        help="scale rule: inv-k, inv-k2 or geom:GAMMA (default inv-k)",
    )
    sp.add_argument(
        "--coeff", type=_positive_float, default=1.0,
        help="scale coefficient c in c/k, c/k^2, c*gamma^k (default 1)",
    )
    sp.add_argument(
        "--count", type=_positive_int, default=20,
        help="number of sequence terms (default 20)",
    )
    sp.add_argument(
        "--clamp", action="store_true",
        help="clamp negative term entries to zero instead of rejecting",
    )
    _add_common(sp)
    sp.set_defaults(func=cmd_converge)

    sp = sub.add_parser(
        "gelfand", help="norm-power radius estimates and the scaling demo"
    )
    sp.add_argument("matrix", help="matrix file")
    sp.add_argument(
        "--m-max", type=_positive_int, default=10,
        help="largest power in the trace (default 10)",
    )
    sp.add_argument(
        "--alphas", type=_alpha_list, default=[2.0, 10.0, 100.0],
        help="comma-separated scale factors for the demo (default 2,10,100)",
    )
    _add_common(sp)
    sp.set_defaults(func=cmd_gelfand)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except matcore.MatrixFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def console_main() -> None:
    raise SystemExit(main())


if __name__ == "__main__":
    raise SystemExit(main())
