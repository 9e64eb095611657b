"""Command-line front door.

Subcommands: compile, simulate, decide, fastforward, verify, catalog.
Results go to stdout; diagnostics go to stderr.  Exit codes:

* decide: 0 = YES, 1 = NO
* verify: 0 = all checks passed, 1 = some failed
* 2 = validation error (bad files, malformed circuit, wrong model kind)
* 3 = unsupported flag combination
* 4 = boundary violation while simulating (the program was not produced
  by this compiler, or was edited)
* 5 = modulus error in the modular fast-forward

``OGD_FORGE_THREADS`` caps verifier parallelism.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from .circuits import CircuitError, load_circuit
from .compiler import (
    CompiledProgram,
    CompileError,
    apply_bias_transform,
    apply_eta_scaling,
    compile_cpath,
    compile_cpath_drd,
    compile_cpath_regularized,
    compile_cpath_relu,
)
from .engine import (
    BoundaryViolation,
    decide_first_coordinate_positive,
    decide_fixed_point,
    run_passes,
    trace_record,
)
from .fastforward import (
    ModulusError,
    PrecisionOverflow,
    QuadraticLoss,
    fast_forward,
    fast_forward_mod,
    simulate_quadratic,
)
from .gadgets import drd as drd_gadgets
from .gadgets import hinge as hinge_gadgets
from .gadgets import regularized as reg_gadgets
from .gadgets import relu as relu_gadgets
from .gadgets.base import table_to_json
from .rationals import SparseVec, format_rat, parse_rat
from .verify import known_discrepancies, run_suite

EXIT_YES = 0
EXIT_NO = 1
EXIT_VALIDATION = 2
EXIT_FLAGS = 3
EXIT_BOUNDARY = 4
EXIT_MODULUS = 5


def _err(message: str) -> None:
    print(f"error: {message}", file=sys.stderr)


def _cmd_compile(args: argparse.Namespace) -> int:
    if args.alpha is not None and args.model != "hinge-reg":
        _err("--alpha is only meaningful with --model hinge-reg")
        return EXIT_FLAGS
    if args.model == "hinge-reg" and args.alpha is None:
        _err("--model hinge-reg requires --alpha")
        return EXIT_FLAGS
    if args.eta_root is not None and args.model != "hinge":
        _err("--eta-root is only meaningful with --model hinge")
        return EXIT_FLAGS
    try:
        circuit = load_circuit(args.circuit)
        if args.model == "hinge":
            program = compile_cpath(circuit, args.target)
            if args.eta_root is not None:
                program = apply_eta_scaling(program, parse_rat(args.eta_root))
        elif args.model == "hinge-bias":
            program = apply_bias_transform(compile_cpath(circuit, args.target))
        elif args.model == "hinge-reg":
            program = compile_cpath_regularized(circuit, args.target, parse_rat(args.alpha))
        elif args.model == "dense-relu":
            program = compile_cpath_relu(circuit, args.target)
        else:
            program = compile_cpath_drd(circuit, args.target)
    except (CircuitError, CompileError, ValueError, OSError) as exc:
        _err(str(exc))
        return EXIT_VALIDATION
    program.save(args.output)
    spans = ", ".join(f"phase{k + 1}=[{s},{e})" for k, (s, e) in enumerate(program.phase_spans))
    print(f"d={program.d} examples={len(program.sequence)} passes<={program.default_max_passes()}")
    print(spans)
    return EXIT_YES


def _load_program(path: str) -> CompiledProgram:
    return CompiledProgram.load(path)


def _open_trace(path: str | None):
    return open(path, "w", encoding="utf-8") if path else None


def _cmd_decide(args: argparse.Namespace) -> int:
    try:
        program = _load_program(args.program)
    except (CompileError, OSError, ValueError, KeyError) as exc:
        _err(str(exc))
        return EXIT_VALIDATION
    max_passes = args.max_passes or program.default_max_passes()
    trace = _open_trace(args.trace)
    on_step = None
    if trace is not None:
        on_step = lambda p, s, ex, w, v: trace.write(
            json.dumps(trace_record(p, s, ex, w, v)) + "\n"
        )
    try:
        if args.question == "first-coord":
            decision = decide_first_coordinate_positive(
                program.sequence,
                program.model,
                max_passes,
                program.d,
                initial=program.initial_weights,
                initial_v=program.initial_v,
                on_step=on_step,
            )
        else:
            decision = decide_fixed_point(
                program.sequence,
                program.model,
                max_passes,
                program.d,
                initial=program.initial_weights,
                initial_v=program.initial_v,
                on_step=on_step,
            )
    except BoundaryViolation as exc:
        _err(f"boundary violation: {exc}")
        return EXIT_BOUNDARY
    finally:
        if trace is not None:
            trace.close()
    if decision.answer:
        print(f"YES pass={decision.hit_pass} step={decision.hit_step}")
        return EXIT_YES
    print("NO")
    return EXIT_NO


def _cmd_simulate(args: argparse.Namespace) -> int:
    try:
        header, body = _read_jsonl(args.program)
    except (OSError, ValueError) as exc:
        _err(str(exc))
        return EXIT_VALIDATION
    if header.get("kind") == "quadratic-points":
        try:
            loss, points, w1, eta = _parse_points(header, body)
        except ValueError as exc:
            _err(str(exc))
            return EXIT_VALIDATION
        tau = args.passes * len(points) + 1
        w = simulate_quadratic(loss, points, w1, eta, tau)
        print(json.dumps([format_rat(v) for v in w]))
        return EXIT_YES
    try:
        program = _load_program(args.program)
    except (CompileError, ValueError, KeyError) as exc:
        _err(str(exc))
        return EXIT_VALIDATION
    trace = _open_trace(args.trace)
    on_step = None
    if trace is not None:
        on_step = lambda p, s, ex, w, v: trace.write(
            json.dumps(trace_record(p, s, ex, w, v)) + "\n"
        )
    try:
        state = run_passes(
            program.sequence,
            program.model,
            args.passes,
            program.d,
            initial=program.initial_weights,
            initial_v=program.initial_v,
            on_step=on_step,
        )
    except BoundaryViolation as exc:
        _err(f"boundary violation: {exc}")
        return EXIT_BOUNDARY
    finally:
        if trace is not None:
            trace.close()
    out = {"w": [format_rat(v) for v in state.w]}
    if state.v is not None:
        out["v"] = format_rat(state.v)
    print(json.dumps(out))
    return EXIT_YES


def _read_jsonl(path: str) -> tuple[dict, list[dict]]:
    with open(path, "r", encoding="utf-8") as fh:
        lines = [line for line in fh if line.strip()]
    if not lines:
        raise ValueError(f"{path} is empty")
    header = json.loads(lines[0])
    return header, [json.loads(line) for line in lines[1:]]


def _parse_points(header: dict, body: list[dict]):
    model = header.get("model", {})
    if model.get("kind") != "least-squares":
        raise ValueError(
            f"not a quadratic model file (model kind {model.get('kind')!r}); "
            "fastforward and quadratic simulation need least-squares points"
        )
    d = int(header["d"])
    loss = QuadraticLoss.least_squares(d)
    points = [(SparseVec.from_json(obj["x"]), parse_rat(obj["y"])) for obj in body]
    w1 = [parse_rat(v) for v in header.get("w1", ["0"] * d)]
    eta = parse_rat(header.get("eta", "1"))
    return loss, points, w1, eta


def _cmd_fastforward(args: argparse.Namespace) -> int:
    try:
        header, body = _read_jsonl(args.points)
        loss, points, w1, eta = _parse_points(header, body)
    except (OSError, ValueError, KeyError) as exc:
        _err(str(exc))
        return EXIT_VALIDATION
    if args.eta is not None:
        eta = parse_rat(args.eta)
    try:
        if args.mod is not None:
            w = fast_forward_mod(loss, points, w1, eta, args.tau, args.mod)
            print(json.dumps([str(v) for v in w]))
        else:
            w = fast_forward(loss, points, w1, eta, args.tau)
            print(json.dumps([format_rat(v) for v in w]))
    except ModulusError as exc:
        _err(str(exc))
        return EXIT_MODULUS
    except PrecisionOverflow as exc:
        _err(str(exc))
        return EXIT_VALIDATION
    return EXIT_YES


def _cmd_verify(args: argparse.Namespace) -> int:
    threads = int(os.environ.get("OGD_FORGE_THREADS", "1"))
    report = run_suite(args.suite, seed=args.seed, n_random=args.random, threads=threads)
    if args.format == "json":
        print(json.dumps(report.to_json(), indent=2))
    else:
        print(report.to_text())
    return EXIT_YES if report.passed else EXIT_NO


def _cmd_catalog(args: argparse.Namespace) -> int:
    from fractions import Fraction as F

    alpha = parse_rat(args.alpha)
    eps = parse_rat(args.eps)
    tables = (
        hinge_gadgets.all_tables()
        + reg_gadgets.all_tables(alpha, eps, eps)
        + relu_gadgets.all_tables()
        + drd_gadgets.all_tables()
    )
    catalog = {
        "gadgets": [table_to_json(t) for t in tables],
        "regularized_instantiation": {"alpha": format_rat(alpha), "eps": format_rat(eps)},
        "published_value_discrepancies": known_discrepancies(),
    }
    print(json.dumps(catalog, indent=2))
    return EXIT_YES


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ogd-forge",
        description=(
            "Compile circuit-reachability instances into training sequences whose "
            "repeated consumption by online gradient descent simulates the circuit; "
            "simulate, decide, fast-forward, and verify with exact rationals."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compile", help="compile a circuit + target into a training sequence")
    p.add_argument("--circuit", required=True, help="circuit JSON file")
    p.add_argument("--target", required=True, help="target bit string, e.g. 101")
    p.add_argument(
        "--model",
        default="hinge",
        choices=["hinge", "hinge-bias", "hinge-reg", "dense-relu", "drd"],
    )
    p.add_argument("--alpha", help="decay 1-lambda as p/q (hinge-reg only)")
    p.add_argument("--eta-root", help="r with eta = r^2 (hinge only)")
    p.add_argument("-o", "--output", required=True, help="output program file (JSONL)")
    p.set_defaults(fn=_cmd_compile)

    p = sub.add_parser("decide", help="run the decision procedure on a compiled program")
    p.add_argument("--program", required=True)
    p.add_argument("--max-passes", type=int, default=None)
    p.add_argument("--question", default="first-coord", choices=["first-coord", "fixed-point"])
    p.add_argument("--trace", help="write a JSONL trace of every step")
    p.set_defaults(fn=_cmd_decide)

    p = sub.add_parser("simulate", help="run a fixed number of passes and print the state")
    p.add_argument("--program", required=True, help="compiled program or quadratic points file")
    p.add_argument("--passes", type=int, default=1)
    p.add_argument("--trace")
    p.set_defaults(fn=_cmd_simulate)

    p = sub.add_parser("fastforward", help="closed-form OGD iterate for quadratic models")
    p.add_argument("--points", required=True, help="quadratic points file (JSONL)")
    p.add_argument("--tau", type=int, required=True)
    p.add_argument("--mod", type=int, help="work modulo this prime")
    p.add_argument("--eta", help="override the file's step size (p/q)")
    p.set_defaults(fn=_cmd_fastforward)

    p = sub.add_parser("verify", help="run the verification suites")
    p.add_argument(
        "--suite", default="all", choices=["gadgets", "equivalence", "fastforward", "all"]
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random", type=int, default=200, help="random instances for equivalence")
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.set_defaults(fn=_cmd_verify)

    p = sub.add_parser("catalog", help="dump every gadget table as JSON")
    p.add_argument("--alpha", default="4/5", help="instantiation for the regularized tables")
    p.add_argument("--eps", default="16/25", help="magnitude for the regularized tables")
    p.set_defaults(fn=_cmd_catalog)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.fn(args)


if __name__ == "__main__":
    sys.exit(main())
