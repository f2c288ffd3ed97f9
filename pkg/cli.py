"""
Command-line module
Handles argument parsing, logging setup and the mapping of failures to exit codes
"""

import argparse
import logging
import sys

from analysis import analyze, render_explain, render_text, run
from config import (
    APP_NAME,
    APP_TAGLINE,
    DEFAULT_SEED,
    EXIT_INPUT_ERROR,
    EXIT_INVARIANT,
    EXIT_OK,
    RANDOM_CORPUS_COUNT,
    SUPPORTED_ORDERS,
    TOOL_VERSION,
)
from corpus import all_passed, render_summary, run_corpus
from data_manager import dumps_json, load_problem_text, save_json, save_text
from errors import TangentSpaceError
from problem_file import parse

logger = logging.getLogger(__name__)


class ArgumentParser(argparse.ArgumentParser):
    """Usage errors exit with the input-error code"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INPUT_ERROR, f"{self.prog}: error: {message}\n")


def _seed(text):
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return value


def build_parser():
    parser = ArgumentParser(prog=APP_NAME, description=APP_TAGLINE)
    parser.add_argument("--version", action="version", version=f"{APP_NAME} {TOOL_VERSION}")
    parser.add_argument("-v", "--verbose", action="count", default=0, help="-v for INFO, -vv for DEBUG")
    commands = parser.add_subparsers(dest="command", required=True, parser_class=ArgumentParser)

    analyze_cmd = commands.add_parser("analyze", help="compare tangent spaces for one problem file")
    analyze_cmd.add_argument("file")
    output = analyze_cmd.add_mutually_exclusive_group()
    output.add_argument("--json", dest="format", action="store_const", const="json", help="JSON report (default)")
    output.add_argument("--text", dest="format", action="store_const", const="text", help="table report")
    analyze_cmd.add_argument("--order", choices=SUPPORTED_ORDERS, help="override the file's monomial order")
    analyze_cmd.add_argument("--trust-point", action="store_true", default=None,
                             help="skip expensive irreducibility certification")
    analyze_cmd.add_argument("--seed", type=_seed, help="override the file's seed")
    analyze_cmd.add_argument("--output", help="also write the report to this file")

    corpus_cmd = commands.add_parser("corpus", help="run the bundled or random corpus")
    corpus_cmd.add_argument("--mode", choices=["paper", "random"], default="paper")
    corpus_cmd.add_argument("--seed", type=_seed, default=DEFAULT_SEED)
    corpus_cmd.add_argument("--count", type=int, default=RANDOM_CORPUS_COUNT)
    corpus_cmd.add_argument("--jobs", type=int, default=1, help="worker processes")
    corpus_cmd.add_argument("--output", help="also write the summary to this file")

    explain_cmd = commands.add_parser("explain", help="print bases and matrices for one problem file")
    explain_cmd.add_argument("file")
    explain_cmd.add_argument("--order", choices=SUPPORTED_ORDERS)
    explain_cmd.add_argument("--trust-point", action="store_true", default=None)
    explain_cmd.add_argument("--seed", type=_seed)
    return parser


def configure_logging(verbosity):
    level = logging.WARNING
    if verbosity == 1:
        level = logging.INFO
    elif verbosity > 1:
        level = logging.DEBUG
    logging.basicConfig(
        level=level,
        format="[%(levelname)s] %(name)s: %(message)s",
        stream=sys.stderr,
    )


def cmd_analyze(args):
    text = load_problem_text(args.file)
    report = analyze(parse(text), args.order, args.trust_point, args.seed, text)
    if args.format == "text":
        rendered = render_text(report)
    else:
        rendered = dumps_json(report)
    print(rendered)
    if args.output:
        if args.format == "text":
            save_text(args.output, rendered)
        else:
            save_json(args.output, report)
    return EXIT_OK


def cmd_corpus(args):
    summary = run_corpus(args.mode, args.seed, args.count, args.jobs)
    rendered = render_summary(summary, args.mode, args.seed)
    print(rendered)
    if args.output:
        save_text(args.output, rendered)
    return EXIT_OK if all_passed(summary) else EXIT_INVARIANT


def cmd_explain(args):
    text = load_problem_text(args.file)
    print(render_explain(run(parse(text), args.order, args.trust_point, args.seed, text)))
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "corpus": cmd_corpus,
    "explain": cmd_explain,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    configure_logging(args.verbose)
    try:
        return COMMANDS[args.command](args)
    except TangentSpaceError as exc:
        logger.debug("failure", exc_info=True)
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    sys.exit(main())
