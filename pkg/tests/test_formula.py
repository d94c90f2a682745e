from fractions import Fraction

import pytest

from untangle.formula import (
    Clause,
    ClausePlacement,
    Embedding,
    Polarity,
    Rect,
    derive_embedding,
    nest_levels,
    parse_formula,
    validate_embedding,
    variable_rect,
)

TEXT = """
# two clauses sharing x2 and x3
x1 x2 x3 x4
+ x3 x1 x2 @1
- x2 x3 x4
"""


def test_parse_formula():
    formula = parse_formula(TEXT)
    assert formula.variables == ("x1", "x2", "x3", "x4")
    first, second = formula.clauses
    # variables are sorted by the variable order
    assert first == Clause(Polarity.POSITIVE, ("x1", "x2", "x3"), 1)
    assert second.polarity is Polarity.NEGATIVE
    assert second.level == 1
    assert str(first) == "+ x1 x2 x3 @1"
    assert parse_formula(str(formula)) == formula


@pytest.mark.parametrize(
    "text",
    [
        "",
        "# only a comment",
        "x1 x1 x2",
        "x1 x2 x3\n+ x1 x2",
        "x1 x2 x3\n* x1 x2 x3",
        "x1 x2 x3\n+ x1 x2 x4",
        "x1 x2 x3\n+ x1 x1 x2",
        "x1 x2 x3\n+ x1 x2 x3 @0",
        "x1 x2 x3\n+ x1 x2 x3 @top",
    ],
)
def test_parse_errors(text):
    with pytest.raises(ValueError):
        parse_formula(text)


def test_satisfiability():
    formula = parse_formula(TEXT)
    assert formula.evaluate({"x1": True, "x2": False, "x3": False, "x4": False})
    assert not formula.evaluate({"x1": False, "x2": False, "x3": False, "x4": True})
    assert formula.is_satisfiable()
    both_signs = parse_formula("a b c\n+ a b c\n- a b c @2\n")
    assert both_signs.is_satisfiable()
    assert len(formula.occurrences("x2", Polarity.POSITIVE)) == 1
    assert formula.occurrences("x4", Polarity.POSITIVE) == []


def test_assignments():
    formula = parse_formula("a b c\n+ a b c\n")
    assignments = list(formula.assignments())
    assert len(assignments) == 8
    assert sum(formula.evaluate(a) for a in assignments) == 7


def test_derive_embedding_is_valid():
    formula = parse_formula(TEXT)
    embedding = derive_embedding(formula)
    assert validate_embedding(formula, embedding).valid
    assert embedding.center("x2") == 16
    positive, negative = embedding.clauses
    assert positive.edges == (1, 17, 33)
    assert positive.rect.y0 > 0
    assert negative.rect.y1 < 0


def test_shared_edge_is_reported():
    formula = parse_formula("a b c d e\n+ a b c\n+ c d e\n")
    embedding = derive_embedding(formula)
    assert validate_embedding(formula, embedding).valid
    first, second = embedding.clauses
    x = first.edges[2]
    rect = Rect(x - 2, second.rect.y0, second.rect.x1, second.rect.y1)
    moved = ClausePlacement(second.clause, rect, (x,) + second.edges[1:])
    report = validate_embedding(formula, Embedding(embedding.variables, (first, moved)))
    assert not report.valid
    assert any("share" in v for v in report.violations)


def test_shared_side_is_widened():
    formula = parse_formula("a b c d e\n+ a b e\n+ b c d\n")
    embedding = derive_embedding(formula)
    assert validate_embedding(formula, embedding).valid
    outer, inner = embedding.clauses
    assert outer.clause.level == 2 and inner.clause.level == 1
    # the middle edge of the outer clause leaves b left of the inner clause
    assert outer.edges[1] + 5 <= inner.edges[0]
    b = embedding.variables["b"]
    assert b.x0 < outer.edges[1] < inner.edges[0] < b.x1


def test_nest_levels():
    formula = parse_formula("a b c d e f\n+ a b f\n+ c d e\n+ b c e\n- a b c @3\n")
    assert [c.level for c in nest_levels(formula)] == [3, 1, 2, 3]
    with pytest.raises(ValueError):
        nest_levels(parse_formula("a b c d\n+ a b c\n+ b c d\n"))


def test_validation_violations():
    formula = parse_formula("a b c\n+ a b c\n")
    embedding = derive_embedding(formula)
    placement = embedding.clauses[0]
    off_axis = dict(embedding.variables)
    off_axis["a"] = Rect(Fraction(-6), Fraction(0), Fraction(6), Fraction(2))
    report = validate_embedding(formula, Embedding(off_axis, embedding.clauses))
    assert any("x-axis" in v for v in report.violations)

    rect = placement.rect
    below = Rect(rect.x0, -rect.y1, rect.x1, -rect.y0)
    flipped = ClausePlacement(placement.clause, below, placement.edges)
    report = validate_embedding(formula, Embedding(embedding.variables, (flipped,)))
    assert any("wrong side" in v for v in report.violations)

    missing = Embedding({"a": variable_rect(0)}, ())
    assert not validate_embedding(formula, missing).valid


def test_nested_levels_are_valid():
    formula = parse_formula("a b c d e f\n+ a b f @2\n+ c d e @1\n")
    embedding = derive_embedding(formula)
    assert validate_embedding(formula, embedding).valid
    outer, inner = embedding.clauses
    assert outer.base == 80 and inner.base == 0
    assert outer.rect.y0 > inner.rect.y1
