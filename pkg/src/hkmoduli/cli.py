"""Command-line interface.

Every subcommand writes one canonical JSON document (sorted keys, no
insignificant whitespace) to stdout. Exit codes: 0 success, 1 valid input
with a negative answer, 2 invalid input, 3 internal invariant violation.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction

from . import configs, family, hyperkahler, invariants, ratmaps
from .errors import InvariantViolation, ValidationError
from .gaussian import GR

EXIT_OK, EXIT_NEGATIVE, EXIT_INVALID, EXIT_INTERNAL = 0, 1, 2, 3


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def _load(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path} is not valid JSON: {exc}") from exc


def _parse_json_arg(text: str, what: str):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{what} is not valid JSON: {exc}") from exc


def _mode(args) -> str:
    return "float" if getattr(args, "float", False) else "exact"


# subcommands -----------------------------------------------------------------


def cmd_critical_config(args) -> tuple[int, dict]:
    f = ratmaps.RationalMap.from_json(_load(args.map))
    if _mode(args) == "float":
        cfg = ratmaps.critical_divisor_float(f)
    else:
        cfg = ratmaps.critical_divisor(f)
    out = cfg.to_json()
    out["hurwitz"] = cfg.total_weight == 2 * f.degree - 2
    return EXIT_OK, out


def cmd_equiv(args) -> tuple[int, dict]:
    c = ratmaps.WeightedConfig.from_json(_load(args.a))
    d = ratmaps.WeightedConfig.from_json(_load(args.b))
    res = configs.find_equivalence(c, d, mode=_mode(args))
    return (EXIT_OK if res.equivalent else EXIT_NEGATIVE), res.to_json()


def _family_params(args) -> family.FamilyParams:
    if args.u is not None:
        raw = _parse_json_arg(args.u, "--u")
        try:
            u = family.PolydiskPoint([GR.from_json(x) for x in raw])
        except (TypeError, ValueError) as exc:
            if isinstance(exc, ValidationError):
                raise
            raise ValidationError(f"malformed --u: {exc}") from exc
        params = family.phi(u)
        if args.N is not None and args.N != params.N:
            raise ValidationError("--N disagrees with the length of --u")
        return params
    if args.N is None:
        raise ValidationError("family needs --N (with --params) or --u")
    raw = _parse_json_arg(args.params, "--params") if args.params else []
    return family.FamilyParams.from_json({"N": args.N, "a": raw})


def cmd_family(args) -> tuple[int, dict]:
    params = _family_params(args)
    out: dict = {"params": params.to_json()}
    emit = args.emit
    if emit in ("derivative", "all"):
        d = family.family_derivative(params)
        out["derivative"] = {
            "poly": d.poly.to_json(),
            "factors": [{"root": r.to_json(), "mult": m} for r, m in d.factors],
        }
    if emit in ("map", "all"):
        out["map"] = family.family_map(params).to_json()
    if emit in ("config", "all"):
        out["config"] = family.family_config(params).to_json()
    return EXIT_OK, out


def cmd_distinguish(args) -> tuple[int, dict]:
    raw = _load(args.params_file)
    if not isinstance(raw, list):
        raise ValidationError("distinguish expects a JSON list of FamilyParams")
    params = [family.FamilyParams.from_json(p) for p in raw]
    cert = family.distinguish(params, workers=args.workers)
    return (EXIT_OK if cert["all_distinct"] else EXIT_NEGATIVE), cert


def cmd_invariants(args) -> tuple[int, dict]:
    d = invariants.TwistorData(args.k, args.ell)
    return EXIT_OK, invariants.summary(d)


def _random_vector(rng: random.Random, n: int) -> list[GR]:
    def q():
        return Fraction(rng.randint(-9, 9), rng.randint(1, 9))

    return [GR(q(), q()) for _ in range(n)]


def cmd_ks_verify(args) -> tuple[int, dict]:
    if args.samples < 0:
        raise ValidationError("--samples must be non-negative")
    exact = _mode(args) == "exact"
    frame = hyperkahler.build_frame(args.k, exact=exact)
    if not hyperkahler.quaternion_relations_hold(frame):
        raise InvariantViolation("quaternion relations failed")
    rng = random.Random(args.seed)
    residual = Fraction(0) if exact else 0.0
    for _ in range(args.samples):
        vec = _random_vector(rng, frame.dim)
        if not exact:
            vec = [complex(z) for z in vec]
        residual = max(residual, hyperkahler.contraction_identity(frame, vec).max_residual)
    fd = hyperkahler.ks_finite_difference_check(frame, args.h)
    nd = hyperkahler.twozero_nondegeneracy(frame)
    out = {
        "quaternion_relations": "ok",
        "contraction_max_residual": str(residual) if exact else residual,
        "fd_error": fd.error,
        "fd_order": hyperkahler.fd_convergence_order(frame, args.h, against="J"),
        "fd_error_vs_2j": fd.error_vs_2j,
        "fd_order_vs_2j": hyperkahler.fd_convergence_order(frame, args.h, against="2J"),
        "fd_scale": fd.scale,
        "nondegeneracy_rank": nd["rank"],
        "annihilates_01": nd["annihilates_01"],
        "volume_coefficient": str(hyperkahler.top_power_coefficient(frame.omega1)),
        "mode": _mode(args),
        "conventions": hyperkahler.CONVENTIONS,
    }
    return EXIT_OK, out


# parser ------------------------------------------------------------------------


def _add_backend(p: argparse.ArgumentParser):
    g = p.add_mutually_exclusive_group()
    g.add_argument("--exact", action="store_true", default=True, help="exact Gaussian-rational backend (default)")
    g.add_argument("--float", action="store_true", help="floating-complex backend (heuristic)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hkmoduli", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("critical-config", help="critical divisor of a rational map (RationalMap JSON file)")
    p.add_argument("map", help="path to RationalMap JSON, or - for stdin")
    _add_backend(p)
    p.set_defaults(func=cmd_critical_config)

    p = sub.add_parser("equiv", help="Möbius equivalence of two WeightedConfig JSON files")
    p.add_argument("a")
    p.add_argument("b")
    _add_backend(p)
    p.set_defaults(func=cmd_equiv)

    p = sub.add_parser("family", help="derivative, map and critical configuration of a family member")
    p.add_argument("--N", type=int)
    p.add_argument("--params", help="JSON list of Gaussian rationals a_1..a_N")
    p.add_argument("--u", help="JSON list of polydisk coordinates u_j (a_j = u_j + 2j)")
    p.add_argument("--emit", choices=["derivative", "map", "config", "all"], default="all")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("distinguish", help="pairwise inequivalence certificate for a list of FamilyParams")
    p.add_argument("params_file")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_distinguish)

    p = sub.add_parser("invariants", help="canonical degree and Chern bookkeeping")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("ks-verify", help="pointwise Kodaira-Spencer identities on H^k")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--h", type=float, default=1e-4)
    p.add_argument("--seed", type=int, default=0)
    _add_backend(p)
    p.set_defaults(func=cmd_ks_verify)
    return parser


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INVALID if exc.code else EXIT_OK
    try:
        code, payload = args.func(args)
    except InvariantViolation as exc:
        print(f"internal invariant violation: {exc}", file=stderr)
        return EXIT_INTERNAL
    except (ValidationError, ValueError, KeyError, TypeError) as exc:
        print(f"invalid input: {exc}", file=stderr)
        return EXIT_INVALID
    stdout.write(dumps(payload) + "\n")
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
