"""Tiny static SVG renderings (polyline curves and horizontal bars)."""

from xml.sax.saxutils import escape

WIDTH, HEIGHT, MARGIN = 480, 320, 40


def _frame(body, title):
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" '
        f'viewBox="0 0 {WIDTH} {HEIGHT}">\n'
        f'<title>{escape(title)}</title>\n'
        f'<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>\n'
        f"{body}</svg>\n"
    )


def line_chart(series, title="", x_range=(0.0, 1.0), y_range=(0.0, 1.0)):
    """``series`` maps a label to a list of ``(x, y)`` points."""
    x0, x1 = x_range
    y0, y1 = y_range
    pw, ph = WIDTH - 2 * MARGIN, HEIGHT - 2 * MARGIN

    def sx(x):
        return MARGIN + (x - x0) / (x1 - x0) * pw

    def sy(y):
        return HEIGHT - MARGIN - (y - y0) / (y1 - y0) * ph

    parts = [
        f'<line x1="{MARGIN}" y1="{HEIGHT - MARGIN}" x2="{WIDTH - MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>\n',
        f'<line x1="{MARGIN}" y1="{MARGIN}" x2="{MARGIN}" y2="{HEIGHT - MARGIN}" stroke="black"/>\n',
        f'<text x="{WIDTH / 2:.1f}" y="{MARGIN / 2:.1f}" text-anchor="middle" font-size="14">{escape(title)}</text>\n',
    ]
    for i, (label, pts) in enumerate(sorted(series.items())):
        coords = " ".join(f"{sx(x):.2f},{sy(y):.2f}" for x, y in pts)
        parts.append(f'<polyline fill="none" stroke="{_colour(i)}" stroke-width="2" points="{coords}"/>\n')
        parts.append(
            f'<text x="{WIDTH - MARGIN:.1f}" y="{MARGIN + 14 * (i + 1):.1f}" text-anchor="end" '
            f'font-size="11" fill="{_colour(i)}">{escape(label)}</text>\n'
        )
    return _frame("".join(parts), title)


def bar_chart(items, title=""):
    """Horizontal bars for ``(label, value)`` pairs with values in [0, 1]."""
    items = list(items)
    pw = WIDTH - 2 * MARGIN - 40
    step = (HEIGHT - 2 * MARGIN) / max(len(items), 1)
    parts = [
        f'<text x="{WIDTH / 2:.1f}" y="{MARGIN / 2:.1f}" text-anchor="middle" font-size="14">{escape(title)}</text>\n'
    ]
    for i, (label, value) in enumerate(items):
        y = MARGIN + i * step
        parts.append(
            f'<rect x="{MARGIN + 40}" y="{y:.2f}" width="{max(value, 0.0) * pw:.2f}" '
            f'height="{step * 0.8:.2f}" fill="{_colour(0)}"/>\n'
        )
        parts.append(
            f'<text x="{MARGIN + 36}" y="{y + step * 0.6:.2f}" text-anchor="end" font-size="11">{escape(label)}</text>\n'
        )
    return _frame("".join(parts), title)


_PALETTE = ("#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b")


def _colour(i):
    return _PALETTE[i % len(_PALETTE)]
