from untangle.generators import (
    make_butterfly,
    make_star,
    scripted_butterfly_sequence,
)
from untangle.rendering import HIGHLIGHT, render_sequence, render_svg


def test_single_segment():
    svg = render_svg(make_star(1))
    assert svg.startswith("<svg")
    assert svg.count("<line") == 1
    # background plus one red square
    assert svg.count("<rect") == 2
    assert svg.count("<circle") == 1
    assert HIGHLIGHT not in svg


def test_highlight_and_caption():
    svg = render_svg(make_star(3), highlight=[0, 2], caption="three")
    assert svg.count(HIGHLIGHT) == 2
    assert ">three</text>" in svg


def test_rendering_is_deterministic():
    butterfly = make_butterfly(2, perturb=True)
    assert render_svg(butterfly) == render_svg(make_butterfly(2, perturb=True))


def test_sequence_frames():
    sequence = scripted_butterfly_sequence(make_butterfly(3))
    frames = render_sequence(sequence)
    assert len(frames) == len(sequence) + 1 == 22
    first = sequence.steps[0]
    assert f"step 0: flip {first.i} {first.j}" in frames[0]
    assert "step 21: end" in frames[-1]
    assert HIGHLIGHT not in frames[-1]
