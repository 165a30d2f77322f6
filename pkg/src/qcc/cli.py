"""Command-line front end.

Exit codes: 0 success, 2 validation failure (bad parameters or malformed
input), 3 verification failure (a requested check did not pass), 4 I/O error.
Reports are deterministic for a fixed seed and configuration; wall-clock
timings go to stderr so stdout stays byte-identical across runs.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
import time
from dataclasses import dataclass

import numpy as np

from . import channel as chn
from . import conjugate as conj
from . import ebt as ebtmod
from . import gl as glmod
from . import pauli as pmod
from . import serialize as ser
from .purity import OptimizerOptions, multiplicativity_gap, nu_p, s_min
from .random import derived_rng, random_kraus_operators
from .verify import SUITE_NAMES, run_suites

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_VERIFY = 3
EXIT_IO = 4


@dataclass(frozen=True)
class RunConfig:
    """Echoed into every report so runs are reproducible from their output."""

    seed: int = 0
    tol: float = 1e-10
    restarts: int = 32
    output_format: str = "json"
    threads: str = "auto"

    def __post_init__(self):
        if self.tol <= 0:
            raise ValueError("tol must be positive")
        if self.restarts < 1:
            raise ValueError("restarts must be at least 1")


def _config(args) -> RunConfig:
    threads = os.environ.get("QCC_THREADS", getattr(args, "threads", "auto"))
    return RunConfig(
        seed=args.seed,
        tol=args.tol,
        restarts=getattr(args, "restarts", 32),
        output_format=args.format,
        threads=str(threads),
    )


def _opts(args, cfg: RunConfig) -> OptimizerOptions:
    return OptimizerOptions(
        restarts=cfg.restarts,
        tol=cfg.tol,
        seed=cfg.seed,
        max_iter=getattr(args, "max_iter", 2000),
    )


def _report(command: str, cfg: RunConfig, results: dict, checks=None) -> dict:
    rep = {
        "command": command,
        "config": {
            "seed": cfg.seed,
            "tol": cfg.tol,
            "restarts": cfg.restarts,
            "threads": cfg.threads,
            "format": cfg.output_format,
        },
        "results": results,
    }
    if checks is not None:
        rep["checks"] = [
            {
                "name": c.name,
                "passed": bool(c.passed),
                "max_err": float(c.max_err),
                "detail": c.detail,
            }
            for c in checks
        ]
    return rep


# ------------------------------------------------------------------- file io

def _read_json(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        return json.load(fh)


def _load_channel(path: str) -> chn.KrausChannel:
    return ser.channel_from_obj(_read_json(path))


def _load_pauli(path: str) -> pmod.PauliDiagonalChannel:
    return ser.pauli_from_obj(_read_json(path))


def _load_matrix(path: str) -> np.ndarray:
    return ser.decode_matrix(_read_json(path))


def _load_vector(path: str) -> np.ndarray:
    return ser.decode_vector(_read_json(path))


# ------------------------------------------------------------------ emitters

def _flatten(prefix: str, obj, rows: list[tuple[str, str]]):
    if isinstance(obj, dict):
        for k, v in obj.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(obj, (list, tuple)):
        if all(isinstance(v, (int, float, bool, str)) or v is None for v in obj):
            rows.append((prefix, ";".join(_scalar_str(v) for v in obj)))
        else:
            for i, v in enumerate(obj):
                _flatten(f"{prefix}.{i}" if prefix else str(i), v, rows)
    else:
        rows.append((prefix, _scalar_str(obj)))


def _scalar_str(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return ser.format_float(v)
    if v is None:
        return ""
    return str(v)


def _render(payload: dict, fmt: str) -> str:
    if fmt == "json":
        return ser.dumps(payload, indent=2) + "\n"
    if fmt == "csv":
        rows: list[tuple[str, str]] = []
        _flatten("", payload, rows)
        lines = ["key,value"]
        for k, v in rows:
            if "," in v or '"' in v:
                v = json.dumps(v)
            lines.append(f"{k},{v}")
        return "\n".join(lines) + "\n"
    if fmt == "text":
        rows = []
        _flatten("", payload, rows)
        width = max((len(k) for k, _ in rows), default=0)
        return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows) + "\n"
    raise ValueError(f"unknown output format {fmt!r}")


def _emit(payload: dict, args) -> None:
    text = _render(payload, args.format)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _vector_or_none(v):
    return None if v is None else ser.encode_vector(v)


# ------------------------------------------------------------------ handlers

def _p_echo(p: float):
    return "inf" if math.isinf(p) else p


def _parse_p(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    p = float(text)
    if p < 1:
        raise ValueError("p must be at least 1 (or 'inf')")
    return p


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(t) for t in text.split(",") if t.strip() != ""]
    except ValueError as exc:
        raise ValueError(f"bad float list {text!r}") from exc


def cmd_build(args) -> tuple[dict, int]:
    cfg = _config(args)
    rng = derived_rng(cfg.seed, 0)
    kind = args.kind
    d = args.dim
    pauli_kinds = {"identity", "noisy", "depolarizing", "pauli", "axes"}
    if kind in pauli_kinds:
        basis = pmod.build_basis(d)
        if kind == "identity":
            weights = pmod.identity_weights(d)
        elif kind == "noisy":
            weights = pmod.noisy_weights(d)
        elif kind == "depolarizing":
            if args.b is None:
                raise ValueError("depolarizing needs -b")
            weights = pmod.depolarizing_weights(d, args.b)
        elif kind == "pauli":
            if args.weights is None:
                raise ValueError("pauli needs --weights w0,w1,...")
            weights = np.array(_parse_floats(args.weights))
        else:  # axes
            if args.s is None or args.t is None or args.u is None:
                raise ValueError("axes needs -s, -t and -u")
            ch = pmod.axes_channel(basis, args.s, _parse_floats(args.t), args.u)
            return (ser.pauli_to_obj(ch) if args.pauli_json else ser.channel_to_obj(ch.channel)), EXIT_OK
        ch = pmod.pauli_channel(basis, weights)
        return (ser.pauli_to_obj(ch) if args.pauli_json else ser.channel_to_obj(ch.channel)), EXIT_OK
    if kind == "random":
        d_out = args.dout or d
        n = args.kraus or d * d_out
        ops = random_kraus_operators(d, d_out, n, rng)
        return ser.channel_to_obj(chn.KrausChannel(d_in=d, d_out=d_out, kraus=ops)), EXIT_OK
    if kind == "cq":
        ch = ebtmod.random_cq(d, args.dout or d, rng)
        return (ser.ebt_to_obj(ch) if args.ebt_json else ser.channel_to_obj(ch.channel)), EXIT_OK
    if kind == "ebt":
        n = args.n or d + 1
        ch = ebtmod.random_ebt(d, args.dout or d, n, rng)
        return (ser.ebt_to_obj(ch) if args.ebt_json else ser.channel_to_obj(ch.channel)), EXIT_OK
    raise ValueError(f"unknown build kind {kind!r}")


def cmd_conjugate(args) -> tuple[dict, int]:
    ch = _load_channel(args.infile)
    out = conj.conjugate_channel(ch, args.method)
    code = EXIT_OK
    if args.check and args.method != "kraus":
        reference = conj.conjugate_channel(ch, "kraus")
        code = _check_isometry(out, reference, f"{args.method} vs kraus")
    elif args.check:
        print("[qcc] --check is a no-op for the kraus method itself", file=sys.stderr)
    if args.check_against:
        other = _load_channel(args.check_against)
        code = max(code, _check_isometry(out, other, "output vs reference"))
    return ser.channel_to_obj(out), code


def _check_isometry(a, b, label) -> int:
    try:
        rel = conj.find_relating_isometry(a, b, tol=1e-8)
    except conj.NotConjugateError as exc:
        print(f"[qcc] check {label}: FAIL ({exc})", file=sys.stderr)
        return EXIT_VERIFY
    print(
        f"[qcc] check {label}: residual {rel.residual:.3e}, rank {rel.rank}: PASS",
        file=sys.stderr,
    )
    return EXIT_OK


def cmd_apply(args) -> tuple[dict, int]:
    ch = _load_channel(args.infile)
    rho = _load_matrix(args.state)
    return {"matrix": ser.encode_matrix(chn.apply(ch, rho))}, EXIT_OK


def cmd_choi(args) -> tuple[dict, int]:
    ch = _load_channel(args.infile)
    return ser.choi_to_obj(chn.kraus_to_choi(ch)), EXIT_OK


def cmd_nu(args) -> tuple[dict, int]:
    cfg = _config(args)
    ch = _load_channel(args.infile)
    rep = nu_p(ch, args.p, _opts(args, cfg))
    results = {
        "p": _p_echo(args.p),
        "value": rep.value,
        "converged": rep.converged,
        "restarts": rep.restarts,
        "iterations": rep.iterations,
        "optimizer_state": ser.encode_vector(rep.optimizer_state),
    }
    return _report("nu", cfg, results), EXIT_OK


def cmd_smin(args) -> tuple[dict, int]:
    cfg = _config(args)
    ch = _load_channel(args.infile)
    base = math.e if args.base == "e" else 2.0
    rep = s_min(ch, _opts(args, cfg), base=base)
    results = {
        "base": args.base,
        "value": rep.value,
        "converged": rep.converged,
        "restarts": rep.restarts,
        "iterations": rep.iterations,
        "optimizer_state": ser.encode_vector(rep.optimizer_state),
    }
    return _report("smin", cfg, results), EXIT_OK


def cmd_mult(args) -> tuple[dict, int]:
    cfg = _config(args)
    a = _load_channel(args.a)
    b = _load_channel(args.b)
    gap = multiplicativity_gap(a, b, args.p, _opts(args, cfg))
    results = {
        "p": _p_echo(args.p),
        "lhs": gap.lhs,
        "rhs": gap.rhs,
        "gap": gap.gap,
        "witness_state": _vector_or_none(gap.witness_state),
    }
    return _report("mult", cfg, results), EXIT_OK


def cmd_capacity(args) -> tuple[dict, int]:
    cfg = _config(args)
    ch = _load_pauli(args.infile)
    base = math.e if args.base == "e" else 2.0
    value = pmod.holevo_capacity_weyl(ch, _opts(args, cfg), base=base)
    return _report("capacity", cfg, {"base": args.base, "capacity": value}), EXIT_OK


def _basis_for(args) -> pmod.PauliBasis:
    if getattr(args, "product", False):
        b = pmod.build_basis(args.dim)
        return pmod.product_basis(b, b)
    return pmod.build_basis(args.dim)


def cmd_pauli(args) -> tuple[dict, int]:
    cfg = _config(args)
    sub = args.sub
    if sub == "lambda":
        ch = _load_pauli(args.infile)
        lam = pmod.lambda_spectrum(ch)
        return _report("pauli lambda", cfg, {"d": ch.d, "lambda": ser.encode_vector(lam)}), EXIT_OK
    if sub == "ncimage":
        basis = _basis_for(args)
        rho = _load_matrix(args.state)
        if args.explicit:
            psi = _principal_vector(rho)
            gamma = pmod.nc_image_explicit(basis, psi)
        else:
            gamma = pmod.noisy_conjugate_image(basis, rho).matrix
        checks = pmod.nc_image_checks(basis, gamma)
        results = {
            "gamma": ser.encode_matrix(gamma),
            "checks": {
                "projector": checks.projector,
                "diagonal": checks.diagonal,
                "modulus": checks.modulus,
                "doubly_stochastic": checks.doubly_stochastic,
            },
        }
        return _report("pauli ncimage", cfg, results), EXIT_OK
    if sub == "bound":
        ch = _load_pauli(args.infile)
        mb = pmod.majorization_bound(ch, args.p)
        results = {
            "p": _p_echo(args.p),
            "majorization_bound": mb.bound,
            "beta": [float(x) for x in mb.beta],
            "partition": [list(blk) for blk in mb.partition],
            "identity_block_is_subgroup": mb.identity_block_is_subgroup,
            "ambiguous": mb.ambiguous,
            "nu2_bound": pmod.nu2_bound(ch),
        }
        return _report("pauli bound", cfg, results), EXIT_OK
    if sub == "subgroup":
        basis = _basis_for(args)
        rho = _load_matrix(args.state)
        rep = pmod.subgroup_of_support(basis, rho, tol=cfg.tol)
        results = {
            "generators": list(rep.generator_indices),
            "subgroup": list(rep.subgroup_indices),
            "order": rep.order,
            "cosets": [list(c) for c in rep.cosets],
        }
        return _report("pauli subgroup", cfg, results), EXIT_OK
    if sub == "classify":
        b = pmod.build_basis(args.dim)
        basis = pmod.product_basis(b, b)
        psi = _load_vector(args.state)
        res = pmod.classify_product_or_me(basis, psi, tol=cfg.tol)
        results = {
            "d2_decomposable": res.d2_decomposable,
            "class": res.klass,
            "schmidt_values": [float(s) for s in res.schmidt_values],
        }
        return _report("pauli classify", cfg, results), EXIT_OK
    raise ValueError(f"unknown pauli subcommand {sub!r}")


def _principal_vector(rho: np.ndarray) -> np.ndarray:
    w, v = np.linalg.eigh(rho)
    if w[-1] < 1.0 - 1e-8:
        raise ValueError("the explicit formula needs a pure state")
    return v[:, -1]


def cmd_ebt(args) -> tuple[dict, int]:
    cfg = _config(args)
    if args.sub == "conjugate":
        ch = ser.ebt_from_obj(_read_json(args.infile))
        had, kraus = ebtmod.conjugate_ebt(ch)
        results = {
            "gram": ser.encode_matrix(had.x_gram),
            "frame": [ser.encode_vector(v) for v in had.frame],
            "channel": ser.channel_to_obj(kraus),
        }
        return _report("ebt conjugate", cfg, results), EXIT_OK
    if args.sub == "detect":
        ch = _load_channel(args.infile)
        det = ebtmod.is_hadamard_form(ch)
        results = {
            "verdict": det.verdict,
            "frame": None if det.frame is None else [ser.encode_vector(v) for v in det.frame],
            "gram": None if det.gram is None else ser.encode_matrix(det.gram),
        }
        return _report("ebt detect", cfg, results), EXIT_OK
    raise ValueError(f"unknown ebt subcommand {args.sub!r}")


def cmd_gl(args) -> tuple[dict, int]:
    cfg = _config(args)
    ch = _load_channel(args.infile)
    p = args.p
    if args.sub == "theta":
        return {"matrix": ser.encode_matrix(glmod.theta(ch, p))}, EXIT_OK
    if args.sub == "omega":
        return {"matrix": ser.encode_matrix(glmod.omega(ch, p))}, EXIT_OK
    if args.sub == "verify":
        res1, res2 = glmod.verify_gl_identity(ch, p)
        rng = derived_rng(cfg.seed, 0)
        from .random import random_density

        mixed_err = 0.0
        om = glmod.omega(ch, p)
        for _ in range(args.trials):
            rho = random_density(ch.d_in, rng)
            mixed_err = max(
                mixed_err,
                abs(glmod.power_trace(ch, rho, p) - glmod.linearized_trace(om, rho, p)),
            )
        passed = res1 < 1e-12 and res2 < 1e-12 and mixed_err < 1e-12
        results = {
            "p": p,
            "residual_conjugate": res1,
            "residual_shift": res2,
            "mixed_state_residual": mixed_err,
            "passed": passed,
        }
        return _report("gl verify", cfg, results), EXIT_OK if passed else EXIT_VERIFY
    raise ValueError(f"unknown gl subcommand {args.sub!r}")


def cmd_verify(args) -> tuple[dict, int]:
    cfg = _config(args)
    checks = run_suites(args.suite, seed=cfg.seed, trials=args.trials)
    failed = [c for c in checks if not c.passed]
    results = {
        "suite": args.suite,
        "checks_run": len(checks),
        "checks_failed": len(failed),
    }
    return (
        _report("verify", cfg, results, checks=checks),
        EXIT_OK if not failed else EXIT_VERIFY,
    )


# -------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="base RNG seed")
    common.add_argument("--tol", type=float, default=1e-10, help="zero cutoff")
    common.add_argument("--threads", default="auto", help="thread budget (QCC_THREADS overrides)")
    common.add_argument("--format", choices=("json", "csv", "text"), default="json")
    common.add_argument("--out", default=None, help="write output to this path instead of stdout")

    opt = argparse.ArgumentParser(add_help=False)
    opt.add_argument("--restarts", type=int, default=32)
    opt.add_argument("--max-iter", type=int, default=2000, dest="max_iter")

    parser = argparse.ArgumentParser(
        prog="qcc",
        description="Quantum channels, conjugate channels, and optimal output purity.",
    )
    subs = parser.add_subparsers(dest="command", required=True)

    p_build = subs.add_parser("build", parents=[common], help="construct a channel")
    p_build.add_argument(
        "kind",
        choices=("identity", "noisy", "depolarizing", "pauli", "ebt", "cq", "axes", "random"),
    )
    p_build.add_argument("-d", "--dim", type=int, required=True)
    p_build.add_argument("--dout", type=int, default=None)
    p_build.add_argument("-b", type=float, default=None, help="depolarizing parameter")
    p_build.add_argument("--weights", default=None, help="comma-separated Pauli weights")
    p_build.add_argument("-s", type=float, default=None, help="axes: identity weight")
    p_build.add_argument("-t", default=None, help="axes: comma-separated per-axis weights")
    p_build.add_argument("-u", type=float, default=None, help="axes: noise weight")
    p_build.add_argument("--kraus", type=int, default=None, help="random: Kraus count")
    p_build.add_argument("-n", type=int, default=None, help="ebt: number of rank-one elements")
    p_build.add_argument("--pauli-json", action="store_true", help="emit the Pauli-diagonal format")
    p_build.add_argument("--ebt-json", action="store_true", help="emit the EBT vector format")
    p_build.set_defaults(handler=cmd_build)

    p_conj = subs.add_parser("conjugate", parents=[common], help="conjugate a channel")
    p_conj.add_argument("--in", dest="infile", required=True)
    p_conj.add_argument("--method", choices=("kraus", "choi", "ancilla"), default="kraus")
    p_conj.add_argument("--check", action="store_true", help="verify against the kraus route")
    p_conj.add_argument("--check-against", default=None, help="verify against a channel file")
    p_conj.set_defaults(handler=cmd_conjugate)

    p_apply = subs.add_parser("apply", parents=[common], help="apply a channel to a state")
    p_apply.add_argument("--in", dest="infile", required=True)
    p_apply.add_argument("--state", required=True, help="matrix JSON file")
    p_apply.set_defaults(handler=cmd_apply)

    p_choi = subs.add_parser("choi", parents=[common], help="Choi matrix of a channel")
    p_choi.add_argument("--in", dest="infile", required=True)
    p_choi.set_defaults(handler=cmd_choi)

    p_nu = subs.add_parser("nu", parents=[common, opt], help="maximal output p-norm")
    p_nu.add_argument("--in", dest="infile", required=True)
    p_nu.add_argument("-p", type=_parse_p, required=True)
    p_nu.set_defaults(handler=cmd_nu)

    p_smin = subs.add_parser("smin", parents=[common, opt], help="minimal output entropy")
    p_smin.add_argument("--in", dest="infile", required=True)
    p_smin.add_argument("--base", choices=("2", "e"), default="2")
    p_smin.set_defaults(handler=cmd_smin)

    p_mult = subs.add_parser("mult", parents=[common, opt], help="multiplicativity gap")
    p_mult.add_argument("--a", required=True)
    p_mult.add_argument("--b", required=True)
    p_mult.add_argument("-p", type=_parse_p, required=True)
    p_mult.set_defaults(handler=cmd_mult)

    p_cap = subs.add_parser("capacity", parents=[common, opt], help="Holevo capacity (Weyl covariant)")
    p_cap.add_argument("--in", dest="infile", required=True, help="Pauli-diagonal JSON file")
    p_cap.add_argument("--base", choices=("2", "e"), default="2")
    p_cap.set_defaults(handler=cmd_capacity)

    p_pauli = subs.add_parser("pauli", help="Pauli-diagonal analyses")
    pauli_subs = p_pauli.add_subparsers(dest="sub", required=True)
    pl = pauli_subs.add_parser("lambda", parents=[common])
    pl.add_argument("--in", dest="infile", required=True)
    pl.set_defaults(handler=cmd_pauli)
    pn = pauli_subs.add_parser("ncimage", parents=[common])
    pn.add_argument("-d", "--dim", type=int, required=True)
    pn.add_argument("--state", required=True, help="matrix JSON file")
    pn.add_argument("--product", action="store_true", help="use the d x d product basis")
    pn.add_argument("--explicit", action="store_true", help="use the closed-form assembly")
    pn.set_defaults(handler=cmd_pauli)
    pb = pauli_subs.add_parser("bound", parents=[common])
    pb.add_argument("--in", dest="infile", required=True)
    pb.add_argument("-p", type=_parse_p, default=math.inf)
    pb.set_defaults(handler=cmd_pauli)
    ps = pauli_subs.add_parser("subgroup", parents=[common])
    ps.add_argument("-d", "--dim", type=int, required=True)
    ps.add_argument("--state", required=True)
    ps.add_argument("--product", action="store_true")
    ps.set_defaults(handler=cmd_pauli)
    pc = pauli_subs.add_parser("classify", parents=[common])
    pc.add_argument("-d", "--dim", type=int, required=True, help="prime factor dimension")
    pc.add_argument("--state", required=True, help="vector JSON file on d^2")
    pc.set_defaults(handler=cmd_pauli)

    p_ebt = subs.add_parser("ebt", help="entanglement-breaking channel tools")
    ebt_subs = p_ebt.add_subparsers(dest="sub", required=True)
    ec = ebt_subs.add_parser("conjugate", parents=[common])
    ec.add_argument("--in", dest="infile", required=True, help="EBT JSON file")
    ec.set_defaults(handler=cmd_ebt)
    ed = ebt_subs.add_parser("detect", parents=[common])
    ed.add_argument("--in", dest="infile", required=True, help="channel JSON file")
    ed.set_defaults(handler=cmd_ebt)

    p_gl = subs.add_parser("gl", help="linearization operators")
    gl_subs = p_gl.add_subparsers(dest="sub", required=True)
    for name in ("theta", "omega"):
        g = gl_subs.add_parser(name, parents=[common])
        g.add_argument("--in", dest="infile", required=True)
        g.add_argument("-p", type=int, required=True)
        g.set_defaults(handler=cmd_gl)
    gv = gl_subs.add_parser("verify", parents=[common])
    gv.add_argument("--in", dest="infile", required=True)
    gv.add_argument("-p", type=int, default=2)
    gv.add_argument("--trials", type=int, default=5)
    gv.set_defaults(handler=cmd_gl)

    p_verify = subs.add_parser("verify", parents=[common], help="run invariant suites")
    p_verify.add_argument("--suite", choices=SUITE_NAMES + ("all",), default="all")
    p_verify.add_argument("--trials", type=int, default=None)
    p_verify.set_defaults(handler=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with code 2
        return int(exc.code or 0)
    start = time.perf_counter()
    try:
        payload, code = args.handler(args)
    except conj.NotConjugateError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VERIFY
    except (ValueError, KeyError, TypeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return EXIT_IO
    if payload is not None:
        _emit(payload, args)
    print(
        f"[qcc] {args.command} finished in {time.perf_counter() - start:.3f}s",
        file=sys.stderr,
    )
    return code


if __name__ == "__main__":
    sys.exit(main())
