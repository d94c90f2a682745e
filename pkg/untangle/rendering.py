"""
SVG drawings of matchings and flip sequences.

Red points are filled squares and blue points hollow circles. Coordinates
are scaled to a square canvas and written with a fixed number of decimals,
so the same matching always renders to the same bytes.
"""

from fractions import Fraction
from typing import List, Sequence, Set

from untangle import constants
from untangle.engine import FlipSequence
from untangle.matching import Flip, Matching

RED = "#c0392b"
BLUE = "#2e5cb8"
SEGMENT = "#333333"
HIGHLIGHT = "#e67e22"


def _num(value: float) -> str:
    return f"{value:.3f}"


class Canvas:
    """accumulates SVG elements in canvas coordinates"""

    def __init__(self, matching: Matching):
        size = constants.SVG_SIZE
        margin = constants.SVG_MARGIN
        xs = [p.x for p in matching.points]
        ys = [p.y for p in matching.points]
        self.min_x, self.max_y = min(xs), max(ys)
        span = max(max(xs) - self.min_x, self.max_y - min(ys), Fraction(1))
        self.scale = Fraction(size - 2 * margin) / span
        self.margin = margin
        self.width = size
        self.height = size
        self._elements: List[str] = []

    def to_canvas(self, point):
        x = self.margin + (point.x - self.min_x) * self.scale
        # svg y grows downwards
        y = self.margin + (self.max_y - point.y) * self.scale
        return float(x), float(y)

    def line(self, a, b, color=SEGMENT, width=1.5):
        x1, y1 = self.to_canvas(a)
        x2, y2 = self.to_canvas(b)
        self._elements.append(
            f'<line x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}" '
            f'style="stroke:{color};stroke-width:{width};stroke-linecap:round" />'
        )

    def square(self, p, color=RED):
        x, y = self.to_canvas(p)
        a = constants.SVG_MARKER
        self._elements.append(
            f'<rect x="{_num(x - a)}" y="{_num(y - a)}" width="{2 * a}" height="{2 * a}" '
            f'style="fill:{color};stroke:{color}" />'
        )

    def circle(self, p, color=BLUE):
        x, y = self.to_canvas(p)
        self._elements.append(
            f'<circle cx="{_num(x)}" cy="{_num(y)}" r="{constants.SVG_MARKER}" '
            f'style="fill:#ffffff;stroke:{color};stroke-width:1.5" />'
        )

    def text(self, x, y, text, font_size=14):
        self._elements.append(
            f'<text x="{x}" y="{y}" font-family="sans-serif" font-size="{font_size}">'
            f"{text}</text>"
        )

    def __str__(self):
        body = "\n".join(self._elements)
        return (
            f'<svg width="{self.width}" height="{self.height}" '
            f'viewBox="0 0 {self.width} {self.height}" version="1.1" '
            f'xmlns="http://www.w3.org/2000/svg">\n'
            f'<rect width="100%" height="100%" style="fill:#ffffff" />\n'
            f"{body}\n</svg>\n"
        )


def render_svg(
    matching: Matching, highlight: Sequence[int] = (), caption: str = None
) -> str:
    """one SVG document; segments of the reds in ``highlight`` are drawn in orange"""
    canvas = Canvas(matching)
    marked: Set[int] = set(highlight)
    for i in range(matching.n):
        color = HIGHLIGHT if i in marked else SEGMENT
        canvas.line(matching.reds[i], matching.blues[matching.mate[i]], color=color)
    for p in matching.reds:
        canvas.square(p)
    for p in matching.blues:
        canvas.circle(p)
    if caption:
        canvas.text(constants.SVG_MARGIN, constants.SVG_MARGIN - 4, caption)
    return str(canvas)


def render_sequence(sequence: FlipSequence) -> List[str]:
    """One frame per configuration of the sequence, start and end included.

    Every frame but the last highlights the pair flipped next.
    """
    frames = []
    matchings = sequence.matchings()
    for step, matching in enumerate(matchings):
        if step < len(sequence.steps):
            flip: Flip = sequence.steps[step]
            highlight = (flip.i, flip.j)
            caption = f"step {step}: flip {flip.i} {flip.j}"
        else:
            highlight = ()
            caption = f"step {step}: end"
        frames.append(render_svg(matching, highlight, caption))
    return frames
