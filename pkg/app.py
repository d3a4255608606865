import sys
import argparse
from fractions import Fraction
from fsing import fp_bfmod as bfmod
from fsing import fp_bsato as bsato
from fsing import fp_singular as singular
from fsing.color import Color, setup_logging
from fsing.fp_arith import PPowRational
from fsing.fp_config import Settings
from fsing.fp_errors import DomainError, InvariantError, ResourceCapError
from fsing.fp_ideals import Ideal
from fsing.fp_identities import verify_rt_identities
from fsing.fp_parse import parse, parse_list
from fsing.fp_poly import PolyRing
from fsing.fp_report import FORMATS, Output


EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_CAP = 2
EXIT_VERIFY = 3
EXIT_USAGE = 64

SUITES = ("identities", "basis", "transform", "theorem")
color = Color()


class UsageError(Exception):
    pass


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that exits with the usage code instead of 2."""

    def error(self, message):
        self.print_usage(sys.stderr)
        color._print(f"{self.prog}: error: {message}", color.WRONG)
        sys.exit(EXIT_USAGE)


def _fraction(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"'{text}' is not a rational number NUM/DEN")


def _int_list(text):
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"'{text}' is not a comma separated list of integers")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--prime", type=int, required=True, help="Characteristic p of the base field")
    common.add_argument("--vars", help="Comma separated variable names, e.g. x,y")
    common.add_argument("--poly", help='The polynomial f, e.g. "x^2+y^3"')
    common.add_argument("--level", type=int, default=1, help="Frobenius level e (default: 1)")
    common.add_argument("--format", choices=FORMATS, default="text", help="Report format (default: text)")
    common.add_argument("--decimal", action="store_true", help="Also print approximate decimal values")
    common.add_argument("--log-level", choices=("DEBUG", "INFO", "WARNING", "ERROR"), default=None)
    common.add_argument("-v", "--verbose", action="store_true", help="Log progress (same as --log-level INFO)")

    ap = CliParser(prog="fsing", description="Test ideals, F-jumping exponents and Bernstein-Sato "
                                             "roots of polynomials over F_p.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("test-ideal", parents=[common], help="tau(f^lambda) with its stabilization level")
    p.add_argument("--lambda", dest="lam", type=_fraction, required=True, help="Exponent NUM/DEN")
    p.add_argument("--e-start", type=int, default=1)
    p.add_argument("--e-cap", type=int, default=None)

    sub.add_parser("jumps", parents=[common], help="Intervals certified to contain F-jumping exponents")

    p = sub.add_parser("gamma", parents=[common], help="The digit tuples Gamma_f^e")
    p.add_argument("--aux", help="Polynomial h for Gamma_{f,w}^e with w = h*delta")

    sub.add_parser("bsato", parents=[common], help="Roots of b_f^(e) for levels 1..e")

    p = sub.add_parser("nu", parents=[common], help="nu^J(p^e) and nu^J(p^e)/p^e")
    p.add_argument("--ideal", required=True, help="Comma separated generators of J")

    p = sub.add_parser("qh-check", parents=[common], help="Quasihomogeneous root prediction")
    p.add_argument("--weights", type=_int_list, required=True)
    p.add_argument("--degree", type=int, required=True)

    p = sub.add_parser("verify", parents=[common], help="Run a verification suite")
    p.add_argument("suite", choices=SUITES)
    p.add_argument("--bound", type=int, default=None, help="n bound (identities) or m bound (basis)")
    p.add_argument("--order-bound", type=int, default=None, help="Operator order bound (identities)")
    p.add_argument("--refinement", type=int, default=1, help="Extra levels for the theorem suite")
    p.add_argument("--samples", type=int, default=3, help="Random elements for the basis suite")
    p.add_argument("--seed", type=int, default=0)
    return ap


def _require(args, *names):
    missing = [name for name in names if getattr(args, name) in (None, "")]
    if missing:
        flags = ", ".join("--" + name.replace("_", "-") for name in missing)
        raise UsageError(f"{args.command} needs {flags}")


def _setup_ring(args):
    _require(args, "vars", "poly")
    ring = PolyRing(args.prime, [v.strip() for v in args.vars.split(",")])
    return ring, parse(args.poly, ring)


def _base(args, ring, f):
    return {"prime": ring.prime, "vars": list(ring.var_names), "poly": f.render(), "level": args.level}


def _header_lines(payload):
    return [f"prime: {payload['prime']}", f"vars: {','.join(payload['vars'])}",
            f"poly: {payload['poly']}", f"level: {payload['level']}"]


def _approx(value):
    return format(float(value.to_fraction() if isinstance(value, PPowRational) else value), ".6f")


def _show(value, decimal):
    text = value.render()
    return f"{text} (approx {_approx(value)})" if decimal else text


def _gamma_text(gamma):
    return "{" + ",".join(str(t) for t in gamma.sorted()) + "}"


def _report_output(args, payload, report):
    payload["report"] = report.to_json()
    lines = _header_lines(payload) if "poly" in payload else [f"prime: {payload['prime']}"]
    lines.append(report.summary())
    lines.extend(f"  {w}" for w in report.witnesses)
    rows = [[report.name, report.passed, report.checked]]
    return Output(payload, ["check", "pass", "checked"], rows, lines), report.passed


def cmd_test_ideal(args):
    ring, f = _setup_ring(args)
    result = singular.test_ideal(f, args.lam, args.e_start, args.e_cap)
    payload = _base(args, ring, f)
    payload.update({"level": result.level, "lambda": str(args.lam), "ideal": result.ideal.render(),
                    "stabilized": result.stabilized})
    lines = _header_lines(payload)
    lines.append(f"tau(f^{args.lam}) = ({', '.join(payload['ideal'])})")
    if not result.stabilized:
        lines.append("unstabilized: the level cap was reached")
    return Output(payload, ["generator"], [[g] for g in payload["ideal"]], lines), True


def cmd_jumps(args):
    ring, f = _setup_ring(args)
    result = singular.f_jumping_exponents(f, args.level)
    payload = _base(args, ring, f)
    payload["jumps"] = [{"lo": lo.to_json(), "hi": hi.to_json()} for lo, hi in result.jumps]
    if args.decimal:
        payload["jumps_approx"] = [{"lo": _approx(lo), "hi": _approx(hi)} for lo, hi in result.jumps]
    lines = _header_lines(payload)
    lines.extend(f"({_show(lo, args.decimal)}, {_show(hi, args.decimal)}]" for lo, hi in result.jumps)
    rows = [[lo.render(), hi.render()] for lo, hi in result.jumps]
    return Output(payload, ["lo", "hi"], rows, lines), True


def cmd_gamma(args):
    ring, f = _setup_ring(args)
    payload = _base(args, ring, f)
    if args.aux:
        h = parse(args.aux, ring)
        gamma = singular.gamma_set_relative(f, h, args.level)
        payload["aux"] = h.render()
    else:
        gamma = singular.gamma_set(f, args.level)
    payload["gamma"] = gamma.as_lists()
    payload["count"] = len(gamma)
    lines = _header_lines(payload)
    lines.append(f"gamma: {_gamma_text(gamma)}")
    rows = [[" ".join(str(d) for d in t)] for t in payload["gamma"]]
    return Output(payload, ["tuple"], rows, lines), True


def cmd_bsato(args):
    ring, f = _setup_ring(args)
    levels = bsato.bs_poly_levels(f, args.level)
    top = levels[-1]
    payload = _base(args, ring, f)
    payload["roots"] = [r.to_json() for r in top.roots]
    payload["char_p_roots"] = [s.value for s in levels[0].char_p_roots]
    payload["levels"] = [{"level": b.level, "roots": [r.to_json() for r in b.roots],
                          "gamma": b.gamma.as_lists()} for b in levels]
    if args.decimal:
        payload["roots_approx"] = [_approx(r) for r in top.roots]
    lines = _header_lines(payload)
    for b in levels:
        lines.append(f"b_f^({b.level}) roots: {', '.join(_show(r, args.decimal) for r in b.roots)}")
    lines.append(f"b_f roots in F_{ring.prime}: {', '.join(str(s) for s in levels[0].char_p_roots)}")
    rows = [[b.level, r.render()] for b in levels for r in b.roots]
    return Output(payload, ["level", "root"], rows, lines), True


def cmd_nu(args):
    ring, f = _setup_ring(args)
    J = Ideal(ring, parse_list(args.ideal, ring))
    payload = _base(args, ring, f)
    table = []
    if args.decimal:
        # nu/p^k for k = 1..e increases towards the F-threshold
        table = singular.f_threshold_approximations(f, J, args.level)
        _, value, ratio = table[-1]
    else:
        value = singular.nu(f, J, args.level)
        ratio = PPowRational(value, args.level, ring.prime)
    payload.update({"ideal": J.render(), "nu": value, "ratio": ratio.to_json()})
    if args.decimal:
        payload["ratio_approx"] = _approx(ratio)
        payload["approximations"] = [{"level": e, "nu": n, "ratio": r.to_json(), "approx": _approx(r)}
                                     for e, n, r in table]
    lines = _header_lines(payload)
    lines.append(f"nu: {value}")
    lines.append(f"nu/p^e: {_show(ratio, args.decimal)}")
    lines.extend(f"level {e}: nu={n}, nu/p^e={_show(r, True)}" for e, n, r in table)
    return Output(payload, ["nu", "ratio"], [[value, ratio.render()]], lines), True


def cmd_qh_check(args):
    ring, f = _setup_ring(args)
    report = bsato.quasihomogeneous_check(f, args.weights, args.degree)
    payload = _base(args, ring, f)
    payload.update({"weights": args.weights, "degree": args.degree})
    return _report_output(args, payload, report)


def cmd_verify(args):
    if args.suite == "identities":
        bound = 200 if args.bound is None else args.bound
        report = verify_rt_identities(args.prime, bound, args.order_bound)
        return _report_output(args, {"prime": args.prime, "bound": bound}, report)

    ring, f = _setup_ring(args)
    payload = _base(args, ring, f)
    if args.suite == "theorem":
        report = bsato.verify_main_theorem(f, args.level, args.refinement)
        payload["refinement"] = args.refinement
    else:
        ctx = bfmod.BfContext.of(f)
        if args.suite == "transform":
            report = bfmod.verify_level_transformation(ctx, args.level)
        else:
            bound = 3 if args.bound is None else args.bound
            report = bfmod.verify_basis_actions(ctx, args.level, bound, args.samples, args.seed)
            report.merge(bfmod.verify_decomposition(ctx, args.level, args.samples, args.seed))
            payload["bound"] = bound
    return _report_output(args, payload, report)


COMMANDS = {
    "test-ideal": cmd_test_ideal,
    "jumps": cmd_jumps,
    "gamma": cmd_gamma,
    "bsato": cmd_bsato,
    "nu": cmd_nu,
    "qh-check": cmd_qh_check,
    "verify": cmd_verify,
}


def run(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE
    level = args.log_level or ("INFO" if args.verbose else Settings.get("log_level"))
    setup_logging(level)

    try:
        Settings.load_env()
        output, passed = COMMANDS[args.command](args)
    except UsageError as e:
        ap.print_usage(sys.stderr)
        color._print(f"fsing: error: {e}", color.WRONG)
        return EXIT_USAGE
    except ResourceCapError as e:
        color._print(f"Resource cap reached: {e}", color.WRONG)
        return EXIT_CAP
    except InvariantError as e:
        color._print(f"Invariant violated: {e}", color.WRONG)
        return EXIT_VERIFY
    except DomainError as e:
        color._print(f"Error: {e}", color.WRONG)
        return EXIT_DOMAIN

    print(output.render(args.format))
    if not passed:
        color._print("Verification failed.", color.WRONG)
        return EXIT_VERIFY
    if "report" in output.payload:
        color._print("Verification passed.", color.CORRECT)
    return EXIT_OK


def main():
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
