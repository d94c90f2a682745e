"""
CLI for untangle
"""

import os
import sys
from argparse import ArgumentParser

from untangle import commands, constants
from untangle.engine import PolicyKind
from untangle.errors import AuditFailure, UntangleError
from untangle.generators import SampleKind
from untangle.logger import logger

# subcommands whose function name differs from the command name
COMMAND_FUNCTIONS = {"enumerate": "enumerate_sequences"}


class UsageParser(ArgumentParser):
    """argument parser whose usage errors exit with status 1"""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def environ_or_default(key, default, type_=int):
    """
    Returns the default value of an argument, read from the environment first
    """
    value = os.environ.get(key)
    return {"default": type_(value) if value else default}


def add_input(subparser, required=True):
    subparser.add_argument(
        "-i", "--in", dest="input", required=required, help="matching JSON file"
    )


def add_output(subparser, help_="output file, stdout when omitted"):
    subparser.add_argument("-o", "--out", dest="output", help=help_)


def add_seed(subparser):
    subparser.add_argument("--seed", type=int, default=0, help="random seed")


def add_budget(subparser):
    subparser.add_argument(
        "--budget",
        type=int,
        help="configurations explored before an exact search gives up",
        **environ_or_default(constants.BUDGET_ENV, constants.DEFAULT_BUDGET),
    )


def add_workers(subparser):
    subparser.add_argument(
        "--workers",
        type=int,
        help="number of worker threads",
        **environ_or_default(constants.WORKERS_ENV, 1),
    )


def add_sequence(subparser, required=True):
    subparser.add_argument(
        "--seq", dest="sequence", required=required, help="flip sequence JSON file"
    )


parser = UsageParser(prog="untangle")

subparsers = parser.add_subparsers(dest="command", help="Command to execute")


# GEN
gen_parser = subparsers.add_parser("gen", help="generates an instance")
gen_parser.add_argument("kind", choices=["star", "butterfly", "fence", "random"])
gen_parser.add_argument("-n", "--n", type=int, default=4, help="segments of a star or random instance")
gen_parser.add_argument("-m", "--m", type=int, default=2, help="size of a butterfly or fence")
gen_parser.add_argument(
    "--perturb", action="store_true", help="make butterfly blue heights distinct"
)
gen_parser.add_argument(
    "--sample",
    choices=[kind.value for kind in SampleKind],
    default=SampleKind.RED_ON_LINE.value,
    help="kind of random instance",
)
add_seed(gen_parser)
add_output(gen_parser)


# UNTANGLING
greedy_parser = subparsers.add_parser(
    "greedy", help="untangles a red-on-a-line matching top segment first"
)
add_input(greedy_parser)
add_output(greedy_parser)

policy_parser = subparsers.add_parser(
    "policy", help="untangles by flipping pairs picked by a policy"
)
add_input(policy_parser)
policy_parser.add_argument(
    "--policy",
    choices=[kind.value for kind in PolicyKind],
    default=PolicyKind.FIRST_FOUND.value,
)
add_seed(policy_parser)
add_output(policy_parser)

shortest_parser = subparsers.add_parser("shortest", help="shortest untangle sequence")
add_input(shortest_parser)
add_budget(shortest_parser)
add_output(shortest_parser)

longest_parser = subparsers.add_parser("longest", help="longest untangle sequence")
add_input(longest_parser)
add_budget(longest_parser)
add_workers(longest_parser)
add_output(longest_parser)

enumerate_parser = subparsers.add_parser(
    "enumerate", help="writes every untangle sequence, one per line"
)
add_input(enumerate_parser)
enumerate_parser.add_argument(
    "--limit", type=int, default=constants.DEFAULT_ENUMERATION_LIMIT
)
enumerate_parser.add_argument(
    "--log-interval",
    type=int,
    default=constants.DEFAULT_LOG_INTERVAL,
    help="interval at which to log",
)
add_output(enumerate_parser)


# ANALYSES
potential_parser = subparsers.add_parser(
    "potential", help="prints phi_k of a red-on-a-line matching"
)
add_input(potential_parser)
potential_parser.add_argument("--k", type=int, help="only this red index")
add_output(potential_parser)

track_parser = subparsers.add_parser(
    "track", help="tracks pair states along a flip sequence"
)
add_input(track_parser)
add_sequence(track_parser)
add_output(track_parser)

verify_parser = subparsers.add_parser("verify", help="replays a flip sequence")
add_input(verify_parser)
add_sequence(verify_parser)
verify_parser.add_argument(
    "--complete", action="store_true", help="also require a crossing-free end"
)
add_output(verify_parser)

graph_parser = subparsers.add_parser(
    "graph", help="exports the reconfiguration graph as node-link JSON"
)
add_input(graph_parser)
add_budget(graph_parser)
add_output(graph_parser)


# REDUCTION
reduce_parser = subparsers.add_parser(
    "reduce", help="compiles a monotone 3-SAT formula into a matching"
)
reduce_parser.add_argument("--formula", required=True, help="formula text file")
reduce_parser.add_argument("--alpha", default="1", help="gap factor, at least 1")
reduce_parser.add_argument("--report", help="JSON summary of the reduction")
reduce_parser.add_argument(
    "--audit-gadgets", action="store_true", help="enumerate every gadget first"
)
reduce_parser.add_argument(
    "--decide", action="store_true", help="decide the formula by exact search"
)
add_budget(reduce_parser)
add_workers(reduce_parser)
add_output(reduce_parser)


# OUTPUT
render_parser = subparsers.add_parser("render", help="draws a matching as SVG")
add_input(render_parser)
add_sequence(render_parser, required=False)
add_output(render_parser, help_="SVG file, or frame directory with --seq")

report_parser = subparsers.add_parser(
    "report", help="checks untangle lengths against their bounds"
)
report_parser.add_argument(
    "--max-n", type=int, default=constants.DEFAULT_REPORT_MAX_N
)
report_parser.add_argument(
    "--trials", type=int, default=constants.DEFAULT_REPORT_TRIALS
)
add_seed(report_parser)
add_budget(report_parser)
add_workers(report_parser)
add_output(report_parser, help_="optional JSON copy of the table")


def run(argv=None):
    """
    Function to run the CLI
    """
    args = vars(parser.parse_args(argv))

    if not args["command"]:
        parser.error("no command given")

    name = COMMAND_FUNCTIONS.get(args["command"], args["command"])
    func = getattr(commands, name.replace("-", "_"))
    try:
        func(args)
    except AuditFailure as e:
        logger.error("%s: %s", args["command"], e)
        sys.exit(2)
    except (UntangleError, ValueError, OSError) as e:
        logger.error("%s: %s", args["command"], e)
        sys.exit(1)
