"""Static SVG figure of a bicentric pair and its derived families at one u."""

from __future__ import annotations

import math
from typing import IO, Sequence
from xml.sax.saxutils import escape

import numpy as np

from .derived import confocal_ellipses_from_bicentric, confocal_hyperbolas_from_bicentric
from .errors import BicentricError, DomainError
from .euclid import Circle
from .family import BicentricPair
from .lab import FAMILIES, family_polygon

MARGIN = 0.05

STYLE = """
.circle { fill: none; stroke: #444; stroke-width: 1; }
.conic { fill: none; stroke: #999; stroke-width: 1; stroke-dasharray: 4 3; }
.family { fill: none; stroke-width: 1.5; vector-effect: non-scaling-stroke; }
.family-bicentric { stroke: #e67e22; }
.family-billiard { stroke: #2e86de; }
.family-hyperbolic { stroke: #27ae60; }
.family-pedal_l1 { stroke: #e84393; }
.family-pedal_l2 { stroke: #8e44ad; }
.family-focus_inversive { stroke: #c0392b; stroke-dasharray: 2 2; }
.point { fill: #000; }
"""


def _fmt(x: float) -> str:
    return f"{x:.10g}"


class Figure:
    """Collects primitives in model coordinates (y up) and tracks their bounding box."""

    def __init__(self) -> None:
        self.items: list[str] = []
        self.lo = np.array([np.inf, np.inf])
        self.hi = np.array([-np.inf, -np.inf])

    def _require(self, pts: np.ndarray) -> None:
        self.lo = np.minimum(self.lo, pts.min(axis=0))
        self.hi = np.maximum(self.hi, pts.max(axis=0))

    def circle(self, c: Circle, cls: str = "circle") -> None:
        x, y = c.center
        r = c.radius
        self._require(np.array([[x - r, y - r], [x + r, y + r]]))
        self.items.append(f'<circle class="{cls}" cx="{_fmt(x)}" cy="{_fmt(-y)}" r="{_fmt(r)}"/>')

    def polyline(self, pts: np.ndarray, cls: str, *, closed: bool = False, fit: bool = True) -> None:
        pts = np.asarray(pts, dtype=float)
        if fit:
            self._require(pts)
        cmds = " ".join(("M" if i == 0 else "L") + f"{_fmt(x)},{_fmt(-y)}" for i, (x, y) in enumerate(pts))
        if closed:
            cmds += " Z"
        self.items.append(f'<path class="{cls}" d="{cmds}"/>')

    def point(self, p, label: str, size: float) -> None:
        x, y = p
        self.items.append(
            f'<circle class="point" cx="{_fmt(x)}" cy="{_fmt(-y)}" r="{_fmt(size)}"><title>{label}</title></circle>'
        )

    def comment(self, text: str) -> None:
        self.items.append(f"<!-- {text.replace('--', '-')} -->")

    def viewbox(self) -> tuple[float, float, float, float]:
        span = self.hi - self.lo
        pad = MARGIN * float(max(span.max(), 1e-12))
        x0, y0 = self.lo - pad
        w, h = span + 2 * pad
        # y is flipped on output, so the top edge is -(max y)
        return float(x0), float(-(y0 + h)), float(w), float(h)

    def to_string(self, title: str = "") -> str:
        x, y, w, h = self.viewbox()
        head = (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'viewBox="{_fmt(x)} {_fmt(y)} {_fmt(w)} {_fmt(h)}" width="800" height="{_fmt(800 * h / w)}">\n'
            f"<title>{title}</title>\n<style>{STYLE}</style>\n"
        )
        return head + "\n".join(self.items) + "\n</svg>\n"


def render_families(
    pair: BicentricPair,
    u: float,
    rho: float = 1.0,
    families: Sequence[str] = FAMILIES,
    *,
    conics: bool = True,
) -> str:
    """SVG text with both circles, the confocal conics and one path per family."""
    for fam in families:
        if fam not in FAMILIES:
            raise DomainError(f"unknown family {fam!r}; expected one of {', '.join(FAMILIES)}")
    if not families:
        raise DomainError("no families to render")
    fig = Figure()
    fig.circle(pair.outer)
    fig.circle(pair.inner)
    if conics:
        E = confocal_ellipses_from_bicentric(pair, rho)
        H = confocal_hyperbolas_from_bicentric(pair, rho)
        for conic in (E.outer, E.caustic):
            fig.polyline(conic.sample(200)[0], "conic conic-ellipse", closed=True)
        t_max = math.acosh(4.0 * pair.R / min(H.outer.a, H.caustic.a) + 1.0)
        for conic in (H.outer, H.caustic):
            for branch in conic.sample(200, t_max):
                fig.polyline(branch, "conic conic-hyperbola", fit=False)
    for fam in families:
        try:
            P = family_polygon(fam, pair, u, rho)
        except BicentricError as exc:
            fig.comment(f"{fam} excluded at u={u!r}: {exc}")
            continue
        fig.polyline(P.vertices, f"family family-{fam}", closed=True)
    size = 0.01 * pair.R
    fig.point(pair.l1, "l1", size)
    fig.point(pair.l2, "l2", size)
    title = escape(f"N={pair.N} tau={pair.tau} R={pair.R} r={pair.r:.12g} d={pair.d} u={u}")
    return fig.to_string(title)


def write_svg(stream: IO[str], *args, **kwargs) -> None:
    stream.write(render_families(*args, **kwargs))
