"""
Commands for untangle
"""

import json
import os
import sys
from contextlib import contextmanager
from dataclasses import asdict
from fractions import Fraction
from functools import wraps
from os import path
from typing import IO, Iterator

import networkx as nx
from smart_open import open as smart_open

from untangle import engine, serialization
from untangle.enumerator import SequenceEnumerator
from untangle.errors import AuditFailure
from untangle.fence import make_fence
from untangle.formula import parse_formula
from untangle.generators import (
    SampleKind,
    make_butterfly,
    make_star,
    sample_random,
)
from untangle.logger import logger
from untangle.potential import phi_k, phi_profile
from untangle.rendering import render_sequence, render_svg
from untangle.report import format_table, table1_report
from untangle.sat_reduction import (
    assemble_m_phi,
    audit_gadgets,
    coordinate_bits,
    decide_via_untangling,
)
from untangle.serialization import UntangleJSONEncoder
from untangle.tracking import track_sequence


@contextmanager
def smart_open_with_stdout(filename, mode="w", **kwargs) -> Iterator[IO]:
    """writes to stdout when no file name is given"""
    if filename is None:
        yield sys.stdout
    else:
        with smart_open(filename, mode, **kwargs) as f:
            yield f


def write_json(obj, filename):
    with smart_open_with_stdout(filename) as f:
        json.dump(obj, f, cls=UntangleJSONEncoder, indent=2)
        f.write("\n")


def uses_matching(f):
    """
    Decorator for commands that read the matching given with --in.
    """

    @wraps(f)
    def wrapper(args):
        matching = serialization.load_matching(args["input"])
        return f(args, matching)

    return wrapper


def gen(args: dict):
    """Generates a star, butterfly, fence or random instance"""
    kind = args["kind"]
    if kind == "star":
        matching = make_star(args["n"])
    elif kind == "butterfly":
        matching = make_butterfly(args["m"], perturb=args["perturb"])
    elif kind == "fence":
        matching, _ = make_fence(args["m"])
    else:
        matching = sample_random(SampleKind(args["sample"]), args["n"], args["seed"])
    logger.info("generated %s with %s segments", kind, matching.n)
    write_json(serialization.matching_to_dict(matching), args["output"])


def _write_sequence(sequence: engine.FlipSequence, args: dict):
    logger.info("untangle sequence of length %s", len(sequence))
    write_json(serialization.sequence_to_dict(sequence, with_start=True), args["output"])


@uses_matching
def greedy(args: dict, matching):
    _write_sequence(engine.run_greedy_top(matching), args)


@uses_matching
def policy(args: dict, matching):
    chosen = engine.Policy.from_name(args["policy"], args["seed"])
    _write_sequence(engine.run_policy(matching, chosen), args)


@uses_matching
def shortest(args: dict, matching):
    result = engine.shortest_untangle(matching, args["budget"])
    logger.info("shortest: %s flips, %s configurations", result.length, result.explored)
    _write_sequence(result.witness, args)


@uses_matching
def longest(args: dict, matching):
    result = engine.longest_untangle(matching, args["budget"], workers=args["workers"])
    logger.info("longest: %s flips, %s configurations", result.length, result.explored)
    _write_sequence(result.witness, args)


@uses_matching
def enumerate_sequences(args: dict, matching):
    """Writes every untangle sequence, one JSON document per line"""
    enumerator = SequenceEnumerator(
        matching, limit=args["limit"], log_interval=args["log_interval"]
    )
    lengths = set()
    with smart_open_with_stdout(args["output"]) as f:
        for sequence in enumerator:
            lengths.add(len(sequence))
            f.write(json.dumps(serialization.sequence_to_dict(sequence)) + "\n")
    logger.info(
        "%s sequences, lengths %s, truncated %s",
        enumerator.processed_count,
        sorted(lengths),
        enumerator.truncated,
    )


@uses_matching
def potential(args: dict, matching):
    """Prints phi_k for every red index, or for --k only, and their sum"""
    if args["k"] is not None:
        profile = {args["k"]: phi_k(matching, args["k"])}
    else:
        profile = dict(enumerate(phi_profile(matching)))
    with smart_open_with_stdout(args["output"]) as f:
        f.write("k\tphi_k\n")
        for k, value in profile.items():
            f.write(f"{k}\t{value}\n")
        if args["k"] is None:
            f.write(f"total\t{sum(profile.values())}\n")


@uses_matching
def track(args: dict, matching):
    sequence = serialization.load_sequence(args["sequence"], matching)
    trace = track_sequence(matching, sequence.steps)
    write_json(
        {
            "trajectories": {
                f"{i},{j}": [s.value for s in states]
                for (i, j), states in trace.trajectories.items()
            },
            "transitions": dict(sorted(trace.transitions.items())),
            "h_counts": trace.h_counts(),
            "ht_events": trace.ht_events,
        },
        args["output"],
    )


@uses_matching
def verify(args: dict, matching):
    sequence = serialization.load_json(args["sequence"])
    report = engine.verify_sequence(matching, serialization.flips_from_dict(sequence))
    write_json(report, args["output"])
    if not report.valid:
        raise AuditFailure(f"flip {report.first_invalid} is not a crossing pair")
    if args["complete"] and not report.complete:
        raise AuditFailure(f"{report.final_crossings} crossings remain")


def reduce(args: dict):
    """Compiles a formula into its reduction matching"""
    with smart_open(args["formula"]) as f:
        formula = parse_formula(f.read())
    instance = assemble_m_phi(formula, alpha=Fraction(args["alpha"]))
    write_json(serialization.matching_to_dict(instance.matching), args["output"])

    summary = {
        "variables": len(formula.variables),
        "clauses": len(formula.clauses),
        "alpha": instance.alpha,
        "padding": instance.padding,
        "threshold": instance.threshold,
        "points": 2 * instance.matching.n,
        "coordinate_bits": coordinate_bits(instance.matching),
        "red_labels": instance.labelled.red_labels,
        "blue_labels": instance.labelled.blue_labels,
    }
    if args["audit_gadgets"]:
        reports = audit_gadgets(workers=args["workers"])
        summary["gadgets"] = [{**asdict(r), "verdict": r.verdict} for r in reports]
    if args["decide"]:
        summary["decision"] = decide_via_untangling(
            instance.matching, formula, instance.alpha, args["budget"]
        )
    if args["report"]:
        write_json(summary, args["report"])
    failed = [g["gadget"] for g in summary.get("gadgets", []) if not g["verdict"]]
    if failed:
        raise AuditFailure(f"gadget audits failed: {failed}")


@uses_matching
def render(args: dict, matching):
    """Renders a matching, or one frame per step of --seq into --out"""
    if args["sequence"] is None:
        with smart_open_with_stdout(args["output"]) as f:
            f.write(render_svg(matching))
        return
    if args["output"] is None:
        raise ValueError("rendering a sequence needs an output directory")
    sequence = serialization.load_sequence(args["sequence"], matching)
    frames = render_sequence(sequence)
    if "://" not in args["output"]:
        os.makedirs(args["output"], exist_ok=True)
    for step, frame in enumerate(frames):
        with smart_open(path.join(args["output"], f"frame-{step:03d}.svg"), "w") as f:
            f.write(frame)
    logger.info("wrote %s frames to %s", len(frames), args["output"])


def report(args: dict):
    summary = table1_report(
        args["max_n"], args["trials"], args["seed"], args["budget"], args["workers"]
    )
    sys.stdout.write(format_table(summary))
    if args["output"]:
        write_json(summary.reports, args["output"])
    if not summary.passed:
        raise AuditFailure(f"{len(summary.failures)} instances break a bound")


@uses_matching
def graph(args: dict, matching):
    """Exports the reconfiguration graph as node-link JSON"""
    digraph = engine.reconfiguration_graph(matching, args["budget"])
    data = nx.node_link_data(digraph)
    data["start"] = matching.mate
    data["sinks"] = sorted(node for node in digraph if digraph.out_degree(node) == 0)
    logger.info(
        "reconfiguration graph: %s configurations, %s flips",
        digraph.number_of_nodes(),
        digraph.number_of_edges(),
    )
    write_json(data, args["output"])
