"""Command line interface: ``k3sextic <subcommand> ...``.

Exit codes: 0 everything checked holds, 1 a check failed, 2 some result is
inconclusive, 3 bad input or usage.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .arith.fields import QQ, ZZ
from .groebner import DEFAULT_BUDGET, STRATEGIES, GroebnerInconclusive, buchberger, elimination_ideal
from .k3 import (
    BudgetExceeded,
    WeilData,
    count_points,
    example_factor_hints,
    example_sextic,
    example_weil_data,
    read_factor_hints,
)
from .mpoly import Ideal, PolySyntaxError, format_ideal, parse_ideal, parse_order, parse_poly
from .pipeline import DEPTHS, SearchConfig, search_sextics, verify_sextic
from .realcert import DEFAULT_EPS, DEFAULT_MAX_DEPTH, certify_negative
from .tritangent import MethodInapplicable, candidate_primes, detect_tritangent

EXIT_OK, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_USAGE = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from exc


def _load_sextic(args):
    if getattr(args, "example", False):
        return example_sextic(ZZ)
    if not args.poly:
        raise UsageError("--poly FILE (or --example) is required")
    text = " ".join(ln.split("#", 1)[0] for ln in _read(args.poly).splitlines()).strip()
    return parse_poly(text, ("x", "y", "z"), ZZ)


def _emit(obj, out: str | None = None):
    text = json.dumps(obj, indent=2)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _hints(args, f) -> list[int]:
    if args.hints:
        return read_factor_hints(_read(args.hints))
    return example_factor_hints() if f == example_sextic(ZZ) else []


def cmd_verify(args) -> int:
    f = _load_sextic(args)
    weil = None
    if args.weil:
        weil = WeilData.from_text(_read(args.weil))
    elif f == example_sextic(ZZ):
        weil = example_weil_data()
    report = verify_sextic(f, depth=args.depth, weil=weil, bound=args.bound, eps=args.eps,
                           max_depth=args.max_depth, budget=args.budget,
                           count_ext=args.ext, factor_hints=_hints(args, f))
    report.provenance["weil_source"] = args.weil or ("shipped fixture" if weil else None)
    _emit(report.to_json(), args.json)
    return report.exit_code()


def cmd_search(args) -> int:
    config = SearchConfig.from_text(_read(args.config))
    if args.budget is not None:
        config.budget = args.budget
    if args.seed is not None:
        config.seed = args.seed
    out = open(args.json, "w") if args.json else sys.stdout
    try:
        for f, report in search_sextics(config):
            if f is None:
                record = {"stats": report}
            else:
                record = {"candidate": f.to_str(), "stages": report}
            out.write(json.dumps(record) + "\n")
    finally:
        if args.json:
            out.close()
    return EXIT_OK


def cmd_tritangent(args) -> int:
    f = _load_sextic(args)
    if args.find_primes:
        try:
            cands = candidate_primes(f, budget=args.budget).refine(_hints(args, f))
        except MethodInapplicable as exc:
            _emit({"applicable": False, "reason": str(exc)}, args.json)
            return EXIT_FAIL
        _emit(dict(cands.to_json(), applicable=True), args.json)
        return EXIT_INCONCLUSIVE if cands.unresolved else EXIT_OK
    if args.prime is None:
        raise UsageError("tritangent needs --prime P or --find-primes")
    res = detect_tritangent(f, args.prime, bound=args.bound, budget=args.budget)
    _emit(res.to_json(), args.json)
    return EXIT_OK if res.exact and not res.beyond_bound else EXIT_INCONCLUSIVE


def cmd_count_points(args) -> int:
    f = _load_sextic(args)
    q = args.prime**args.ext
    try:
        count = count_points(f, args.prime, args.ext, budget=args.max_points)
    except BudgetExceeded as exc:
        _emit({"q": q, "error": str(exc)}, args.json)
        return EXIT_INCONCLUSIVE
    out = {"q": q, "count": count}
    code = EXIT_OK
    if args.weil:
        weil = WeilData.from_text(_read(args.weil), args.prime)
        predicted = weil.predicted_count(args.ext)
        out["predicted"] = int(predicted) if predicted.denominator == 1 else str(predicted)
        out["match"] = predicted == count
        code = EXIT_OK if out["match"] else EXIT_FAIL
    _emit(out, args.json)
    return code


def cmd_groebner(args) -> int:
    ideal = parse_ideal(_read(args.ideal))
    ring = ideal.ring
    if args.order:
        ring = ring.with_order(parse_order(args.order))
        ideal = Ideal([g.change_ring(ring) for g in ideal.generators], ring)
    record = args.denominators
    if record and ring.domain is not QQ:
        raise UsageError("--denominators needs an ideal over QQ")
    if args.eliminate:
        names = tuple(v for v in args.eliminate.split(",") if v)
        result, gb = elimination_ideal(ideal, names, strategy=args.strategy, budget=args.budget,
                                       record_denominators=record)
    else:
        gb = buchberger(ideal, ring.order, record_denominators=record, strategy=args.strategy,
                        budget=args.budget)
        result = Ideal(gb.basis, gb.ring)
    lines = [f"# {k}: {v}" for k, v in gb.stats.items()]
    if record:
        lines.append(f"# denominators: {len(gb.denominators)} entries")
        lines += [f"# denominator {n}" for n in gb.denominators.distinct()]
    text = "\n".join(lines) + "\n" + format_ideal(result)
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_realcheck(args) -> int:
    f = _load_sextic(args)
    cert = certify_negative(f, eps=args.eps, max_depth=args.max_depth)
    _emit(cert.to_json(), args.json)
    return {"certified_negative": EXIT_OK, "counterexample": EXIT_FAIL}.get(cert.verdict, EXIT_INCONCLUSIVE)


def _add_poly(sp):
    src = sp.add_mutually_exclusive_group()
    src.add_argument("--poly", metavar="FILE", help="sextic in x, y, z (text grammar)")
    src.add_argument("--example", action="store_true", help="use the shipped 14-term example sextic")
    sp.add_argument("--json", metavar="OUT", help="write JSON here instead of stdout")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="k3sextic", description="Checks for degree-2 K3 surfaces w^2 = f(x, y, z).")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("verify", help="run every hypothesis check on one sextic")
    _add_poly(sp)
    sp.add_argument("--weil", metavar="FILE", help="Weil polynomial file (one coefficient per line)")
    sp.add_argument("--depth", choices=DEPTHS, default="fast")
    sp.add_argument("--ext", type=int, help="count points up to this extension degree")
    sp.add_argument("--bound", type=int, default=3, help="field degree bound for tritangent search")
    sp.add_argument("--eps", type=float, default=DEFAULT_EPS)
    sp.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="Groebner pair budget")
    sp.add_argument("--hints", metavar="FILE", help="known divisors of unresolved candidates, one per line")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("search", help="random search for sextics passing the cheap stages")
    sp.add_argument("--config", required=True, metavar="FILE", help="key=value configuration")
    sp.add_argument("--budget", type=int)
    sp.add_argument("--seed", type=int)
    sp.add_argument("--json", metavar="OUT", help="write JSON lines here instead of stdout")
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("tritangent", help="tritangent lines mod p, or candidate primes over Q")
    _add_poly(sp)
    sp.add_argument("--prime", type=int)
    sp.add_argument("--bound", type=int, default=3)
    sp.add_argument("--find-primes", action="store_true")
    sp.add_argument("--hints", metavar="FILE", help="known divisors of unresolved candidates, one per line")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.set_defaults(func=cmd_tritangent)

    sp = sub.add_parser("count-points", help="#S(F_q) for q = p^k")
    _add_poly(sp)
    sp.add_argument("--prime", type=int, required=True)
    sp.add_argument("--ext", type=int, default=1)
    sp.add_argument("--weil", metavar="FILE")
    sp.add_argument("--max-points", type=int, default=10**9, help="refuse counts over more points")
    sp.set_defaults(func=cmd_count_points)

    sp = sub.add_parser("groebner", help="reduced Groebner basis of an ideal file")
    sp.add_argument("ideal", metavar="FILE")
    sp.add_argument("--order", help="lex, grevlex or block(v1,v2;grevlex;grevlex)")
    sp.add_argument("--eliminate", metavar="VARS", help="comma-separated variables to eliminate")
    sp.add_argument("--denominators", action="store_true", help="log the integers divided by (QQ only)")
    sp.add_argument("--strategy", choices=STRATEGIES, default="normal")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("-o", "--output", metavar="OUT")
    sp.set_defaults(func=cmd_groebner)

    sp = sub.add_parser("realcheck", help="certify f < 0 on R^3 minus the origin")
    _add_poly(sp)
    sp.add_argument("--eps", type=float, default=DEFAULT_EPS)
    sp.add_argument("--max-depth", type=int, default=DEFAULT_MAX_DEPTH)
    sp.set_defaults(func=cmd_realcheck)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # usage errors and --help
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except (UsageError, PolySyntaxError, ValueError, TypeError) as exc:
        print(f"k3sextic: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except GroebnerInconclusive as exc:
        print(f"k3sextic: inconclusive: {exc}", file=sys.stderr)
        return EXIT_INCONCLUSIVE


if __name__ == "__main__":
    sys.exit(main())
