"""Command-line interface: ``parityperm <command> [flags]``.

Exit codes: 0 success, 2 invalid flags or input, 3 domain error (for example
a seed ket annihilated by the projector), 4 resource bound exceeded.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .characters import IrrepLabel, table
from .errors import BoundExceededError, DomainError
from .gme import gme_of_pure_state, parity_projector, seesaw
from .parity_lab import ParityStateRecipe, build, simulate, verify_parity
from .partitions import Partition
from .tensor_state import StateVector, schur_weyl_audit

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_BOUND = 0, 2, 3, 4


class UsageError(Exception):
    pass


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}")
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError(f"expected a non-negative integer, got {v}")
    return v


def _parse_coeffs(text: str | None):
    if text is None:
        return None
    try:
        return [complex(t.strip().replace("i", "j")) for t in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse coefficients {text!r}")


def _load_state(path: str) -> StateVector:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read state file {path}: {exc}")
    try:
        return StateVector.from_json(data)
    except (KeyError, TypeError, ValueError) as exc:
        raise UsageError(f"malformed state file {path}: {exc}")


def _recipe(args) -> ParityStateRecipe:
    if args.lam is None:
        raise UsageError("--lambda is required")
    method = args.method.replace("-", "_")
    return ParityStateRecipe(
        n=args.n,
        d=args.d,
        method=method,
        lam=Partition.parse(args.lam),
        branch=args.branch,
        seed_ket=args.seed_ket if method == "self_conjugate" else None,
        coefficients=_parse_coeffs(args.coeffs) if method == "conjugate_pair" else None,
    )


# ---------------------------------------------------------------------------
# commands; each returns (json payload, text rendering)


def cmd_chartab(args):
    tab = table(args.group, args.n)
    return tab.to_json(), tab.render()


def cmd_dims(args):
    report = schur_weyl_audit(args.n, args.d)
    return report.to_json(), report.render()


def cmd_state(args):
    recipe = _recipe(args)
    psi = build(recipe, exact=args.exact)
    payload = psi.to_json()
    payload["recipe"] = recipe.to_json()
    return payload, str(psi)


def cmd_verify(args):
    psi = _load_state(args.state)
    report = verify_parity(psi, tol=args.tol)
    payload = report.to_json()
    payload["provenance"] = {"state": args.state, "mode": psi.mode, "tolerance": args.tol}
    text = "\n".join([
        f"valid: {str(report.valid).lower()}",
        f"max_cross_overlap: {report.max_cross_overlap:.3e}",
        f"even images: {report.n_even}, odd images: {report.n_odd}",
    ])
    return payload, text


def cmd_simulate(args):
    psi = _load_state(args.state)
    report = simulate(psi, args.trials, seed=args.seed, allow_invalid=args.allow_invalid)
    payload = report.to_json(with_log=args.log)
    payload["provenance"] = {"state": args.state, "seed": args.seed, "allow_invalid": args.allow_invalid}
    ps = "n/a" if report.empirical_Ps is None else f"{report.empirical_Ps:.6f}"
    text = f"trials: {report.trials}\nsuccesses: {report.successes}\nempirical_Ps: {ps}\nseed: {report.seed}"
    return payload, text


def cmd_gme(args):
    opts = dict(restarts=args.restarts, tol=args.tol, max_sweeps=args.max_sweeps, seed=args.seed,
                fix_first_site=args.fix_first_site)
    if args.state is not None:
        psi = _load_state(args.state)
        result = gme_of_pure_state(psi, **opts)
        source = {"state": args.state}
    else:
        if None in (args.n, args.d, args.lam):
            raise UsageError("gme needs either --state or all of --n, --d, --lambda")
        label = IrrepLabel(Partition.parse(args.lam), args.branch or "")
        P = parity_projector(args.n, args.d, label)
        result = seesaw(P, args.n, args.d, **opts)
        source = {"n": args.n, "d": args.d, "irrep": str(label)}
    payload = result.to_json()
    payload["provenance"] = {**source, "tolerance": args.tol, "max_sweeps": args.max_sweeps,
                             "fix_first_site": args.fix_first_site}
    text = "\n".join([
        f"E: {result.E:.12f}",
        f"max_overlap: {result.max_overlap:.12f}",
        f"converged: {str(result.converged).lower()} after {result.sweeps} sweeps",
        f"restarts: {result.restarts_used}, seed: {result.seed}",
    ])
    return payload, text


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json"], default="text")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write output here instead of stdout")

    parser = argparse.ArgumentParser(prog="parityperm", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("chartab", parents=[common], help="character table of S_n or A_n")
    p.add_argument("--group", choices=["S", "A", "s", "a"], required=True)
    p.add_argument("--n", type=_positive, required=True)
    p.set_defaults(func=cmd_chartab)

    p = sub.add_parser("dims", parents=[common], help="Schur-Weyl dimension audit")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--d", type=_positive, required=True)
    p.set_defaults(func=cmd_dims)

    p = sub.add_parser("state", parents=[common], help="build a parity-detecting state")
    p.add_argument("--n", type=_positive, required=True)
    p.add_argument("--d", type=_positive, required=True)
    p.add_argument("--method", choices=["self-conjugate", "conjugate-pair", "self_conjugate", "conjugate_pair"],
                   required=True)
    p.add_argument("--lambda", dest="lam", required=True, help="partition such as 3,1,1")
    p.add_argument("--branch", choices=["a", "b"], default="a")
    p.add_argument("--seed-ket", dest="seed_ket")
    p.add_argument("--coeffs", help="comma-separated coefficients, e.g. 1,0,0 or 1,1j,0")
    p.add_argument("--exact", action="store_true", help="exact amplitudes for the conjugate-pair method")
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("verify", parents=[common], help="check the parity-detection condition")
    p.add_argument("--state", required=True)
    p.add_argument("--tol", type=float, default=1e-10)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("simulate", parents=[common], help="Monte Carlo run of the parity protocol")
    p.add_argument("--state", required=True)
    p.add_argument("--trials", type=_nonnegative, default=1000)
    p.add_argument("--allow-invalid", action="store_true")
    p.add_argument("--log", action="store_true", help="include the per-trial log in JSON output")
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("gme", parents=[common], help="geometric measure of entanglement by see-saw")
    p.add_argument("--state")
    p.add_argument("--n", type=_positive)
    p.add_argument("--d", type=_positive)
    p.add_argument("--lambda", dest="lam")
    p.add_argument("--branch", choices=["a", "b"])
    p.add_argument("--restarts", type=_positive, default=64)
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--max-sweeps", type=_positive, default=500)
    p.add_argument("--fix-first-site", action="store_true")
    p.set_defaults(func=cmd_gme)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        payload, text = args.func(args)
    except BoundExceededError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except (UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    out = json.dumps(payload, indent=2) if args.format == "json" else text
    if args.out:
        Path(args.out).write_text(out + "\n")
    else:
        print(out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
