"""Command-line front end.

Exit status: 0 success, 1 validation or usage error, 2 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from .classify import firing_strength
from .config import Config, ConfigError, load_config, read_config
from .errors import ValidationError
from .fuzzy import TERMS
from .ingest import parse_event_log
from .metrics import TOP_LEVEL
from .pipeline import build_report, dump_report, rules_for, run_pipeline

EXIT_OK, EXIT_INVALID, EXIT_IO = 0, 1, 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: usage error: {message}\n")


def _unit_interval(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"{value} outside [0, 1]")
    return value


def _load(args):
    config = load_config(args.config)
    rules = rules_for(config, getattr(args, "ruleset", None))
    with open(args.log, "rb") as fh:
        try:
            events, profiles = parse_event_log(fh)
        except ValidationError as exc:
            raise ValidationError(f"{args.log}: {exc}") from exc
    return config, rules, events, profiles


def cmd_validate_config(args) -> int:
    config, problems, warnings = read_config(args.path)
    for w in warnings:
        print(f"warning: {w}", file=sys.stderr)
    for p in problems:
        print(f"error: {p}")
    if not problems and config.ruleset_path is not None:
        try:
            rules_for(config)
        except ValidationError as exc:
            print(f"error: ruleset: {exc}")
            return EXIT_INVALID
    if problems:
        return EXIT_INVALID
    print(f"{args.path}: ok")
    return EXIT_OK


def _format_table(report: dict) -> str:
    with_core = report["command"] == "rank"
    header = f"{'rank':>4}  {'login':<16} {'class':<12} {'ME':>7}  act   cre   attr  rea   loy"
    if with_core:
        header += "  core"
    lines = [header, "-" * len(header)]
    for row in report["users"]:
        cv = row["characteristics"]
        line = (
            f"{row['rank']:>4}  {row['login']:<16} {row['class']:<12} {row['usefulness']:>7.4f}  "
            f"{cv['activeness_total']:.2f}  {cv['creativeness']:.2f}  {cv['attractiveness']:.2f}  "
            f"{cv['reactiveness']:.2f}  {cv['loyalty']:.2f}"
        )
        if with_core:
            line += "  *" if row["in_core"] else ""
        lines.append(line)
    hist = ", ".join(f"{k}: {v}" for k, v in report["summary"]["class_histogram"].items() if v)
    lines.append("")
    lines.append(f"classes: {hist or 'none'}")
    if with_core:
        lines.append(f"core (ME >= {report['summary']['core_threshold']}): {', '.join(report['summary']['core']) or 'empty'}")
    return "\n".join(lines) + "\n"


def _emit(report: dict, fmt: str) -> None:
    sys.stdout.write(dump_report(report) if fmt == "json" else _format_table(report))


def cmd_classify(args) -> int:
    config, rules, events, profiles = _load(args)
    result = run_pipeline(events, profiles, config, rules)
    _emit(build_report(result, "classify"), args.format)
    return EXIT_OK


def cmd_rank(args) -> int:
    config, rules, events, profiles = _load(args)
    result = run_pipeline(events, profiles, config, rules, core_threshold=args.core_threshold)
    _emit(build_report(result, "rank"), args.format)
    return EXIT_OK


def explain_lines(result, login: str) -> list[str]:
    u = result.users[login]
    config: Config = result.config
    ranked = next(r for r in result.ranked if r.login == login)
    out = [f"user: {login}", "", "[activity counts]"]
    out += [f"  {k:<28} {v}" for k, v in u.counts.to_dict().items()]
    out += ["", "[community totals]"]
    out += [f"  {k:<28} {v}" for k, v in result.totals.to_dict().items()]
    out += ["", "[characteristics: shares of community activity and reaction ratios]"]
    out += [f"  {k:<28} {v:.6f}" for k, v in u.characteristics.to_dict().items()]
    out += ["", "[memberships: low / medium / high shoulder-trapezoid terms]"]
    for short, name in TOP_LEVEL.items():
        d = u.assignment.memberships[short]
        degrees = "  ".join(f"{t}={d.degree(t):.4f}" for t in TERMS)
        out.append(f"  {name:<28} {degrees}  -> {u.assignment.dominant_terms[short]}")
    out += ["", "[rule firing strengths: min over characteristics, max over allowed terms]"]
    for rule in result.rules:
        s = firing_strength(rule, u.assignment.memberships)
        ante = ", ".join(f"{k} in {{{','.join(t for t in TERMS if t in v)}}}" for k, v in rule.antecedent.items())
        out.append(f"  {rule.priority}. {rule.class_name.value:<10} {s:.4f}   if {ante}")
    out += ["", "[class]", f"  {u.assignment.class_name}"]
    w = config.weights
    out += ["", "[usefulness: weighted sum of the five characteristics]"]
    cv = u.characteristics
    out.append(
        f"  {w.c_activeness}*{cv.activeness_total:.6f} + {w.c_attractiveness}*{cv.attractiveness:.6f} + "
        f"{w.c_creativeness}*{cv.creativeness:.6f} + {w.c_reactiveness}*{cv.reactiveness:.6f} + "
        f"{w.c_loyalty}*{cv.loyalty:.6f}"
    )
    out.append(f"  ME = {u.usefulness!r}")
    out.append(f"  rank {ranked.rank} of {len(result.ranked)}")
    return out


def cmd_explain(args) -> int:
    config, rules, events, profiles = _load(args)
    result = run_pipeline(events, profiles, config, rules)
    if args.user not in result.users:
        print(f"error: unknown user {args.user!r}", file=sys.stderr)
        return EXIT_INVALID
    print("\n".join(explain_lines(result, args.user)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="snaclass", description="Fuzzy behavioral classification and usefulness ranking of community users.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate-config", help="check a config file and report every problem")
    p.add_argument("path")
    p.set_defaults(func=cmd_validate_config)

    def common(p, fmt=True):
        p.add_argument("log", help="JSON-Lines activity log")
        p.add_argument("--config", help="JSON config (defaults if omitted)")
        p.add_argument("--ruleset", help="JSON ruleset overriding the built-in rules")
        if fmt:
            p.add_argument("--format", choices=("json", "table"), default="json")

    p = sub.add_parser("classify", help="assign each user a behavioral class")
    common(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("rank", help="rank users by usefulness and mark the core")
    common(p)
    p.add_argument("--core-threshold", type=_unit_interval, default=None)
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("explain", help="print the full computation for one user")
    common(p, fmt=False)
    p.add_argument("--user", required=True)
    p.set_defaults(func=cmd_explain)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        for p in exc.problems:
            print(f"error: config: {p}", file=sys.stderr)
        return EXIT_INVALID
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
