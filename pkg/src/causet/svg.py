"""Plain SVG scatter plot of a sprinkle: x across, t upward, diamond outline."""
from __future__ import annotations

import math

CANVAS = 600
MARGIN = 40
POINT_RADIUS = 1.5


def sprinkle_svg(t, x, S: float) -> str:
    half = S * math.sqrt(2) / 2
    scale = (CANVAS - 2 * MARGIN) / (2 * half)
    mid = CANVAS / 2

    def px(xv):
        return mid + scale * xv

    def py(tv):
        return mid - scale * tv

    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" '
        f'viewBox="0 0 {CANVAS} {CANVAS}">',
        f'<rect width="{CANVAS}" height="{CANVAS}" fill="white"/>',
        f'<line class="axis" x1="{MARGIN / 2}" y1="{mid}" x2="{CANVAS - MARGIN / 2}" y2="{mid}" '
        'stroke="#999" stroke-width="0.5"/>',
        f'<line class="axis" x1="{mid}" y1="{CANVAS - MARGIN / 2}" x2="{mid}" y2="{MARGIN / 2}" '
        'stroke="#999" stroke-width="0.5"/>',
        f'<text x="{CANVAS - MARGIN / 2}" y="{mid - 6}" font-size="14" text-anchor="end">x</text>',
        f'<text x="{mid + 6}" y="{MARGIN / 2 + 4}" font-size="14">t</text>',
    ]
    corners = [(0.0, half), (half, 0.0), (0.0, -half), (-half, 0.0)]
    pts = " ".join(f"{px(cx):.3f},{py(ct):.3f}" for cx, ct in corners)
    out.append(f'<polygon class="diamond" points="{pts}" fill="none" stroke="black" stroke-width="1"/>')
    out.append('<g fill="#c0392b">')
    for tv, xv in zip(t, x):
        out.append(f'<circle cx="{px(xv):.3f}" cy="{py(tv):.3f}" r="{POINT_RADIUS}"/>')
    out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
