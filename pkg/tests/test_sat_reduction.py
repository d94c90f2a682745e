from fractions import Fraction
from itertools import product

import pytest

from untangle.engine import run_policy
from untangle.errors import AssemblyAuditFailed, DegenerateRectangle
from untangle.formula import Polarity, Rect, derive_embedding, parse_formula, variable_rect
from untangle.geometry import Color, Segment, blue, red
from untangle.matching import crossing_pairs, is_crossing_free
from untangle.sat_reduction import (
    CLAUSE_LENGTHS,
    CLAUSE_OUTPUT,
    GadgetReport,
    OR_LENGTHS,
    OrGadget,
    VariableState,
    Verdict,
    assemble_m_phi,
    audit_gadgets,
    build_branching,
    build_clause_gadget,
    build_or_gadget,
    build_padding,
    build_variable_gadget,
    coordinate_bits,
    decide_via_untangling,
    enumerate_gadget,
    gadget_jobs,
    labelled_matching,
    padding_size,
    point_count,
    verify_branching,
)


@pytest.fixture(scope="module")
def clause():
    return build_clause_gadget()


def test_labelled_matching():
    labelled = labelled_matching({"r": red(0, 0), "b": blue(1, 1)}, [("r", "b")])
    assert labelled.pairs() == [("r", "b")]
    assert labelled.has_pair("r", "b")


def test_variable_gadget():
    gadget = build_variable_gadget(variable_rect(Fraction(0)))
    initial = gadget.matching()
    report = enumerate_gadget("variable", initial, 1, expected_ends=2)
    assert report.verdict
    assert report.sequences == 2
    for state in (VariableState.TRUE, VariableState.FALSE):
        assert is_crossing_free(gadget.matching(state).matching)
    with pytest.raises(DegenerateRectangle):
        build_variable_gadget(Rect(Fraction(0), Fraction(0), Fraction(0), Fraction(2)))


@pytest.mark.parametrize("x, y", list(product((0, 1), repeat=2)))
def test_or_gadget(clause, x, y):
    report = enumerate_gadget(
        f"or-{x}{y}",
        clause.first.inputs(x, y),
        OR_LENGTHS[(x, y)],
        output=(*OrGadget.OUTPUT, not (x or y)),
    )
    assert report.verdict
    assert report.lengths == (OR_LENGTHS[(x, y)],)
    # two orders for a double zero, one for everything else
    assert report.sequences == (2 if (x, y) == (0, 0) else 1)


def test_build_or_gadget(clause):
    roles = clause.first.roles
    assert build_or_gadget(roles) == clause.first
    partial_roles = dict(roles)
    del partial_roles["bar_red"]
    with pytest.raises(ValueError):
        build_or_gadget(partial_roles)


@pytest.mark.parametrize("bits", list(product((0, 1), repeat=3)))
def test_clause_gadget(clause, bits):
    report = enumerate_gadget(
        "clause",
        clause.inputs(*bits),
        CLAUSE_LENGTHS[bits],
        output=(*CLAUSE_OUTPUT, not any(bits)),
    )
    assert report.verdict
    if sum(bits) >= 2:
        assert report.sequences == 1


def test_clause_all_zero_reaches_output(clause):
    assert CLAUSE_LENGTHS[(0, 0, 0)] == 4
    assert CLAUSE_LENGTHS[(1, 1, 1)] == 0
    assert is_crossing_free(clause.inputs(1, 1, 1).matching)
    assert clause.points["left_top"].color is Color.RED
    assert clause.points["right_top"].color is Color.BLUE


def test_negative_clause_is_mirrored(clause):
    negative = build_clause_gadget(polarity=Polarity.NEGATIVE)
    for label, p in clause.points.items():
        assert negative.points[label].xy == (p.x, -p.y)


@pytest.mark.parametrize("k", [0, 1, 3])
def test_padding(k):
    padding = build_padding(k, Segment(red(0, 0), blue(12, 5)))
    report = enumerate_gadget(f"padding-{k}", padding.triggered(), k)
    assert report.verdict
    assert report.sequences == 1
    assert is_crossing_free(padding.untriggered().matching)
    with pytest.raises(ValueError):
        build_padding(-1, Segment(red(0, 0), blue(12, 5)))


@pytest.mark.slow
def test_padding_nine():
    padding = build_padding(9, Segment(red(0, 0), blue(12, 5)))
    assert enumerate_gadget("padding-9", padding.triggered(), 9).verdict


@pytest.mark.parametrize("a, b", [(1, 0), (1, 1)])
def test_branching(a, b):
    report = verify_branching(a, b)
    assert report.verdict
    assert report.lengths == (2 * (a + b),)


@pytest.mark.slow
@pytest.mark.parametrize("a, b", [(2, 1), (2, 2)])
def test_wide_branching(a, b):
    assert verify_branching(a, b).verdict


def test_branching_rejects_empty():
    with pytest.raises(ValueError):
        build_branching(0, 0)


@pytest.mark.slow
def test_padded_clause_gap(clause):
    report = enumerate_gadget("padded", clause.padded(0, 0, 0, 9), 4 + 9)
    assert report.verdict
    assert min(report.lengths) >= 4 + 9


def test_audit_gadgets_small():
    reports = audit_gadgets(
        workers=4, padding_sizes=(0, 2), branchings=((1, 0),), padded_clause_k=1
    )
    names = [r.gadget for r in reports]
    assert names[0] == "variable"
    assert "padded-clause-1" in names
    assert all(r.verdict for r in reports)


def test_report_counts_sequences():
    report = GadgetReport("clause-110", 7, (1,), 1, 1, expected_sequences=1)
    assert not report.verdict
    assert GadgetReport("clause-110", 1, (1,), 1, 1, expected_sequences=1).verdict
    assert GadgetReport("clause-000", 7, (4,), 1, 4).verdict
    jobs = gadget_jobs(padding_sizes=(), branchings=(), padded_clause_k=0)
    assert jobs["clause-011"].keywords["expected_sequences"] == 1
    assert jobs["or-00"].keywords["expected_sequences"] == 2
    assert jobs["clause-000"].keywords["expected_sequences"] is None


def test_point_count_and_padding():
    assert point_count(3, 1, 9) == 46
    formula = parse_formula("a b c\n+ a b c\n")
    assert padding_size(formula) == 9
    assert padding_size(formula, Fraction(3, 2)) == 13


def test_assemble_one_clause():
    formula = parse_formula("a b c\n+ a b c\n")
    instance = assemble_m_phi(formula)
    assert instance.padding == 9
    assert 2 * instance.matching.n == point_count(3, 1, 9) == 46
    assert instance.threshold == 8
    assert coordinate_bits(instance.matching) > 0
    decision = decide_via_untangling(instance.matching, formula)
    assert decision.verdict is Verdict.SATISFIABLE
    assert decision.length == 3 <= decision.threshold


def test_assemble_without_clauses():
    formula = parse_formula("a b c\n")
    instance = assemble_m_phi(formula)
    decision = decide_via_untangling(instance.matching, formula)
    assert decision.length == len(formula.variables)
    assert decision.verdict is Verdict.SATISFIABLE


def test_assemble_negative_clause():
    formula = parse_formula("a b c\n- a b c\n")
    instance = assemble_m_phi(formula)
    assert 2 * instance.matching.n == point_count(3, 1, 9)


def test_assemble_both_polarities():
    formula = parse_formula("x1 x2 x3 x4\n+ x1 x2 x3\n- x2 x3 x4\n")
    instance = assemble_m_phi(formula)
    assert 2 * instance.matching.n == point_count(4, 2, instance.padding)


def test_shared_sides_assemble():
    shared = parse_formula("a b c d e f\n+ a b c @1\n+ d e c @2\n")
    instance = assemble_m_phi(shared)
    assert 2 * instance.matching.n == point_count(6, 2, instance.padding)
    with pytest.raises(ValueError):
        assemble_m_phi(parse_formula("a b c\n"), alpha=Fraction(1, 2))


FIGURE_TWO = """
x1 x2 x3 x4 x5 x6
+ x1 x2 x3
+ x3 x4 x5
+ x3 x5 x6
- x2 x3 x4
"""


@pytest.fixture(scope="module")
def figure_two():
    return assemble_m_phi(parse_formula(FIGURE_TWO))


def test_figure_two_assembles(figure_two):
    embedding = figure_two.embedding
    levels = [p.clause.level for p in embedding.clauses]
    assert levels == [1, 1, 2, 1]
    positive = [x for p in embedding.clauses[:3] for x in p.edges]
    assert len(set(positive)) == 9
    # x3 carries three positive edges and is widened for them
    x3 = embedding.variables["x3"]
    assert x3.x1 - x3.x0 == 13
    assert figure_two.padding == 27
    assert figure_two.threshold == 26
    assert 2 * figure_two.matching.n == point_count(6, 4, 27) == 292


@pytest.mark.slow
def test_figure_two_falsifying_assignment(figure_two):
    formula = figure_two.formula
    assignment = dict(x1=False, x2=False, x3=False, x4=True, x5=True, x6=True)
    assert not formula.evaluate(assignment)
    run = run_policy(figure_two.assigned(assignment))
    assert run.complete
    assert len(run) + len(formula.variables) > figure_two.threshold


@pytest.mark.slow
def test_figure_two_satisfying_assignment(figure_two):
    formula = figure_two.formula
    assignment = dict(x1=True, x2=False, x3=True, x4=True, x5=True, x6=True)
    assert formula.evaluate(assignment)
    run = run_policy(figure_two.assigned(assignment))
    assert run.complete
    assert len(run) + len(formula.variables) <= figure_two.threshold


def test_assigned_sets_variables():
    formula = parse_formula("a b c\n+ a b c\n")
    instance = assemble_m_phi(formula)
    everything_true = instance.assigned(dict(a=True, b=True, c=True))
    assert is_crossing_free(everything_true)
    one_false = instance.assigned(dict(a=False, b=True, c=True))
    # the top edge of a crosses the left clause edge only
    assert len(crossing_pairs(one_false)) == 1


def test_assembly_rejects_invalid_embedding():
    formula = parse_formula("a b c\n+ a b c\n")
    embedding = derive_embedding(formula)
    crowded = dict(embedding.variables, b=variable_rect(Fraction(2)))
    with pytest.raises(AssemblyAuditFailed) as info:
        assemble_m_phi(formula, type(embedding)(crowded, embedding.clauses))
    assert info.value.step == "embedding"
