"""Command-line interface.

Subcommands:
  expand  write family expansions (laguerre / meixner / fs / schur) as JSON
  verify  run an identity suite and emit a machine-readable report
  zm      z-measure point mass or truncated normalization sums
  dyn     jump-process simulation, spectral transition values, scaling stats

Exit codes: 0 success, 1 mathematical failure (verify), 2 usage error,
3 parameter-domain error. Outputs are byte-identical for identical
configuration and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from . import laguerre, meixner, nvariate, zdynamics
from .coeffring import NumericParams, as_rat
from .partition import from_string, partitions_up_to
from .symcore import SymFunc, eval_on_diagram, omega_involution, symfunc_to_json

USAGE_ERROR = 2
DOMAIN_ERROR = 3
MATH_FAILURE = 1


class CliError(Exception):
    def __init__(self, message, code):
        super().__init__(message)
        self.code = code


def _fail(message, code):
    raise CliError(message, code)


def _load_config(path):
    with open(path, "rb") as fh:
        return tomllib.load(fh)


def _merge_config(args, config):
    for key, value in config.items():
        attr = key.replace("-", "_")
        if hasattr(args, attr) and getattr(args, attr) is None:
            setattr(args, attr, value)
    return args


def _params_from_args(args) -> NumericParams:
    xi = args.xi
    if xi is None:
        _fail("--xi is required for numeric runs", USAGE_ERROR)
    try:
        if args.z_re is not None:
            np_ = NumericParams.conjugate(as_rat(str(args.z_re)),
                                          as_rat(str(args.z_im if args.z_im is not None else 0)),
                                          as_rat(str(xi)))
        elif args.z is not None and args.zp is not None:
            np_ = NumericParams.real_pair(as_rat(str(args.z)), as_rat(str(args.zp)), as_rat(str(xi)))
        else:
            _fail("give --z/--zp or --z-re/--z-im", USAGE_ERROR)
    except (ValueError, ZeroDivisionError) as exc:
        _fail(f"bad parameters: {exc}", DOMAIN_ERROR)
    if not np_.is_admissible():
        _fail(f"inadmissible parameters (series {np_.series})", DOMAIN_ERROR)
    return np_


def _emit(args, payload: str):
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(payload)
    else:
        sys.stdout.write(payload)


# ---------------------------------------------------------------------------
# expand


def cmd_expand(args):
    try:
        shape = from_string(args.shape)
    except ValueError as exc:
        _fail(f"invalid shape: {exc}", USAGE_ERROR)
    family = args.family
    if family == "laguerre":
        f = laguerre.laguerre_sf(shape)
    elif family == "meixner":
        f = meixner.meixner_sf(shape)
    elif family == "fs":
        f = meixner.fs_sf(shape)
    elif family == "schur":
        f = SymFunc.schur(shape)
    else:
        _fail(f"unknown family {family!r}", USAGE_ERROR)
    basis = {"schur": "s", "s": "s", "e": "e", "p": "p", "fs": "fs"}.get(args.basis)
    if basis is None:
        _fail(f"unknown basis {args.basis!r}", USAGE_ERROR)
    _emit(args, json.dumps(symfunc_to_json(f.in_basis(basis)), indent=2) + "\n")
    return 0


# ---------------------------------------------------------------------------
# verify suites; each case is an Invariants entry of the owning module.


def _suite_eigen(max_size):
    for nu in partitions_up_to(max_size):
        lag = laguerre.laguerre_sf(nu)
        yield (f"laguerre schur-rule eigenrelation nu={nu}",
               laguerre.apply_schur(lag) == lag.scale(-sum(nu)))
        yield (f"laguerre e-pde eigenrelation nu={nu}",
               laguerre.apply_e(lag.in_basis("e")) == lag.scale(-sum(nu)).in_basis("e"))
        mei = meixner.meixner_sf(nu)
        yield (f"meixner eigenrelation nu={nu}",
               meixner.apply_fs(mei) == mei.scale(-sum(nu)))


def _suite_orth(max_size):
    from .partition import boxes, content_product

    shapes = list(partitions_up_to(max_size))
    for i, nu in enumerate(shapes):
        for mu in shapes[i:]:
            got = laguerre.inner_product(laguerre.laguerre_sf(nu), laguerre.laguerre_sf(mu))
            want = content_product(boxes(nu)) if nu == mu else None
            ok = got == want if nu == mu else got.is_zero()
            yield (f"laguerre orthogonality ({nu},{mu})", ok)
    from .coeffring import PP_T

    for i, nu in enumerate(shapes):
        for mu in shapes[i:]:
            got = meixner.inner_product_me(meixner.meixner_sf(nu), meixner.meixner_sf(mu))
            if nu == mu:
                want = (PP_T * (PP_T + 1)) ** sum(nu) * content_product(boxes(nu))
                ok = got == want
            else:
                ok = got.is_zero()
            yield (f"meixner orthogonality ({nu},{mu})", ok)


def _suite_truncation(max_size):
    for N in (1, 2, 3):
        for b in (Fraction(1, 3), Fraction(1), Fraction(5, 2)):
            for nu in partitions_up_to(max_size):
                if len(nu) > N:
                    continue
                yield (f"laguerre truncation nu={nu} N={N} b={b}",
                       nvariate.truncation_crosscheck(nu, N, b, nvariate.LAGUERRE))
    for N in (1, 2):
        for xi in (Fraction(1, 3), Fraction(1, 2)):
            for b in (Fraction(1), Fraction(5, 2)):
                for nu in partitions_up_to(min(max_size, 4)):
                    if len(nu) > N:
                        continue
                    yield (f"meixner truncation nu={nu} N={N} b={b} xi={xi}",
                           nvariate.truncation_crosscheck(nu, N, b, nvariate.MEIXNER, xi))


AUTODUAL_PARAMS = (
    NumericParams.conjugate(1, 1, Fraction(1, 2)),
    NumericParams.real_pair(Fraction(1, 3), Fraction(2, 3), Fraction(1, 3)),
    NumericParams.conjugate(Fraction(3, 2), Fraction(1, 2), Fraction(2, 5)),
)


def _suite_autodual(max_size):
    shapes = list(partitions_up_to(max_size))
    for np_ in AUTODUAL_PARAMS:
        for i, nu in enumerate(shapes):
            for lam in shapes[i:]:
                ok = meixner.meixner_value_normalized(nu, lam, np_) == \
                    meixner.meixner_value_normalized(lam, nu, np_)
                yield (f"autoduality ({nu},{lam}) series={np_.series}", ok)


def _suite_limit(max_size):
    for nu in partitions_up_to(max_size):
        yield (f"family degeneration nu={nu}",
               meixner.laguerre_limit(nu) == laguerre.laguerre_sf(nu))
        yield (f"operator degeneration S_{nu}",
               meixner.operator_limit_check(SymFunc.schur(nu)))


SEPARATION_INPUTS = ((1,), (2,), (3,), (4,), (2, 1), (2, 2))


def _suite_sepvar(max_size):
    yield ("separation on 1", laguerre.separation_check(SymFunc.one("e")))
    for mono in SEPARATION_INPUTS:
        f = SymFunc("e", {mono: 1})
        yield (f"separation on e-monomial {mono}", laguerre.separation_check(f))


def _suite_balance(max_size):
    from .partition import corners

    for lam in partitions_up_to(max_size):
        for box in corners(lam)[0]:
            yield (f"detailed balance lam={lam} box={box}",
                   zdynamics.detailed_balance_check(lam, box))
    for lam in partitions_up_to(max_size + 1):
        yield (f"rate-sum identity lam={lam}", zdynamics.rate_sum_check(lam))


def _suite_involution(max_size):
    from .partition import conjugate

    for nu in partitions_up_to(max_size):
        f = SymFunc.schur(nu)
        yield (f"involution sends S_{nu} to its transpose",
               omega_involution(f) == SymFunc.schur(conjugate(nu)))
        yield (f"involution is involutive on S_{nu}",
               omega_involution(omega_involution(f)) == f)
    for nu in partitions_up_to(min(max_size, 4)):
        for lam in partitions_up_to(min(max_size, 4)):
            lhs = eval_on_diagram(SymFunc.schur(nu), conjugate(lam))
            rhs = eval_on_diagram(SymFunc.schur(conjugate(nu)), lam)
            yield (f"transposition consistency nu={nu} lam={lam}", lhs == rhs)


SUITES = {
    "eigen": _suite_eigen,
    "orth": _suite_orth,
    "truncation": _suite_truncation,
    "autodual": _suite_autodual,
    "limit": _suite_limit,
    "sepvar": _suite_sepvar,
    "balance": _suite_balance,
    "involution": _suite_involution,
}


def cmd_verify(args):
    suite = SUITES.get(args.suite)
    if suite is None:
        _fail(f"unknown suite {args.suite!r} (have: {', '.join(sorted(SUITES))})", USAGE_ERROR)
    max_size = args.max_size if args.max_size is not None else 4
    cases = []
    first_failure = None
    for name, ok in suite(max_size):
        cases.append({"case": name, "ok": bool(ok)})
        if not ok and first_failure is None:
            first_failure = name
    report = {
        "suite": args.suite,
        "max_size": max_size,
        "total": len(cases),
        "failed": sum(1 for c in cases if not c["ok"]),
        "cases": cases,
    }
    if first_failure is not None:
        report["first_counterexample"] = first_failure
    _emit(args, json.dumps(report, indent=2) + "\n")
    return MATH_FAILURE if first_failure is not None else 0


# ---------------------------------------------------------------------------
# zm


def cmd_zm(args):
    np_ = _params_from_args(args)
    zm = zdynamics.ZMeasure(np_)
    if args.zm_action == "pmf":
        if args.shape is None:
            _fail("zm pmf needs --shape", USAGE_ERROR)
        try:
            shape = from_string(args.shape)
        except ValueError as exc:
            _fail(f"invalid shape: {exc}", USAGE_ERROR)
        payload = {"partition": list(shape), "pmf": zm.pmf(shape)}
    elif args.zm_action == "sum":
        cutoff = args.cutoff if args.cutoff is not None else 20
        f = None
        if args.moment == "size":
            f = lambda lam: float(sum(lam))  # noqa: E731
        report = zm.normalization_check(cutoff, f=f)
        payload = report
    else:
        _fail("zm needs an action: pmf or sum", USAGE_ERROR)
    _emit(args, json.dumps(payload, indent=2) + "\n")
    return 0


# ---------------------------------------------------------------------------
# dyn


def cmd_dyn(args):
    np_ = _params_from_args(args)
    if args.dyn_action == "simulate":
        if args.seed is None:
            _fail("--seed is required for simulation", USAGE_ERROR)
        if args.t_max is None and args.max_events is None:
            _fail("give a stopping rule: --t-max or --max-events", USAGE_ERROR)
        initial = from_string(args.initial or "")
        try:
            traj = zdynamics.simulate(initial, args.t_max, np_, args.seed,
                                      max_events=args.max_events)
        except ValueError as exc:
            _fail(str(exc), DOMAIN_ERROR)
        _emit(args, traj.to_csv())
        return 0
    if args.dyn_action == "transition":
        source = from_string(args.source or "")
        target = from_string(args.to or "")
        cutoff = args.cutoff if args.cutoff is not None else 8
        try:
            value, shell = zdynamics.transition_prob(source, target, float(args.t), np_, cutoff)
        except (ValueError, ZeroDivisionError) as exc:
            _fail(str(exc), DOMAIN_ERROR)
        payload = {"from": list(source), "to": list(target), "t": float(args.t),
                   "cutoff": cutoff, "value": value, "last_shell": shell}
        _emit(args, json.dumps(payload, indent=2) + "\n")
        return 0
    if args.dyn_action == "scaling":
        if args.seed is None:
            _fail("--seed is required for scaling statistics", USAGE_ERROR)
        xis = [as_rat(x) for x in (args.xis or "").split(",") if x]
        if not xis:
            _fail("--xis must list at least one value", USAGE_ERROR)
        f = {"p1": SymFunc.p(1), "p1sq": SymFunc.p(1) * SymFunc.p(1),
             "p2": SymFunc.p(2)}.get(args.f or "p1")
        if f is None:
            _fail(f"unknown statistic {args.f!r}", USAGE_ERROR)
        seq = []
        for xi in xis:
            if np_.kind == "conj":
                seq.append(NumericParams.conjugate(np_.z1, np_.z2, xi))
            else:
                seq.append(NumericParams.real_pair(np_.z1, np_.z2, xi))
        reports = zdynamics.scaling_limit_stats(seq, f, args.samples or 10000, args.seed)
        _emit(args, json.dumps(reports, indent=2) + "\n")
        return 0
    _fail("dyn needs an action: simulate, transition, or scaling", USAGE_ERROR)


# ---------------------------------------------------------------------------


def _add_param_flags(p):
    p.add_argument("--z", help="z as an exact rational, e.g. 1/3 (real pair)")
    p.add_argument("--zp", help="z' as an exact rational (real pair)")
    p.add_argument("--z-re", dest="z_re", help="Re z (conjugate pair)")
    p.add_argument("--z-im", dest="z_im", help="Im z (conjugate pair)")
    p.add_argument("--xi", help="xi as an exact rational in (0,1)")
    p.add_argument("--config", help="optional TOML config; flags win")
    p.add_argument("--out", help="output path (default: stdout)")


def build_parser():
    parser = argparse.ArgumentParser(prog="lmsym")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", help="family expansions as SymFunc JSON")
    p.add_argument("--family", required=True, choices=("laguerre", "meixner", "fs", "schur"))
    p.add_argument("--shape", required=True, help="partition like '3,2,2'; '' for empty")
    p.add_argument("--basis", default="schur")
    _add_param_flags(p)
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("verify", help="run an identity suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--max-size", dest="max_size", type=int)
    _add_param_flags(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("zm", help="z-measure computations")
    p.add_argument("zm_action", choices=("pmf", "sum"))
    p.add_argument("--shape", help="partition for pmf")
    p.add_argument("--cutoff", type=int)
    p.add_argument("--moment", choices=("size",))
    _add_param_flags(p)
    p.set_defaults(func=cmd_zm)

    p = sub.add_parser("dyn", help="jump-process dynamics")
    p.add_argument("dyn_action", choices=("simulate", "transition", "scaling"))
    p.add_argument("--initial", help="starting partition for simulate")
    p.add_argument("--t-max", dest="t_max", type=float)
    p.add_argument("--max-events", dest="max_events", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--from", dest="source")
    p.add_argument("--to")
    p.add_argument("--t")
    p.add_argument("--cutoff", type=int)
    p.add_argument("--xis", help="comma list of xi values for scaling")
    p.add_argument("--samples", type=int)
    p.add_argument("--f", help="statistic for scaling: p1, p1sq, p2")
    _add_param_flags(p)
    p.set_defaults(func=cmd_dyn)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "config", None):
        try:
            args = _merge_config(args, _load_config(args.config))
        except (OSError, tomllib.TOMLDecodeError) as exc:
            print(f"error: cannot read config: {exc}", file=sys.stderr)
            return USAGE_ERROR
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code


if __name__ == "__main__":
    sys.exit(main())
