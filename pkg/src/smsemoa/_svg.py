"""Minimal deterministic SVG scatter plots (byte-stable for equal inputs)."""

from __future__ import annotations

WIDTH, HEIGHT = 640, 480
MARGIN_L, MARGIN_R, MARGIN_T, MARGIN_B = 72, 24, 40, 56
STYLE = {
    # variant -> (color, marker)
    "A": ("#1f77b4", "circle"),
    "AR": ("#000000", "cross"),
}
FALLBACK_COLORS = ("#d62728", "#2ca02c", "#9467bd", "#8c564b")


def _fmt(v: float) -> str:
    return f"{v:.2f}"


def _ticks(lo: float, hi: float, count: int = 5) -> list[float]:
    if hi <= lo:
        hi = lo + 1.0
    step = (hi - lo) / (count - 1)
    return [lo + i * step for i in range(count)]


def _tick_label(v: float) -> str:
    return f"{v:g}"


def scatter_svg(series: dict, title: str = "", xlabel: str = "f1",
                ylabel: str = "f2") -> str:
    """Render named point series; empty input yields axes only."""
    all_pts = [p for pts in series.values() for p in pts]
    if all_pts:
        xs = [p[0] for p in all_pts]
        ys = [p[1] for p in all_pts]
        xlo, xhi = min(xs), max(xs)
        ylo, yhi = min(ys), max(ys)
        if xhi == xlo:
            xlo, xhi = xlo - 1.0, xhi + 1.0
        if yhi == ylo:
            ylo, yhi = ylo - 1.0, yhi + 1.0
        xpad = 0.05 * (xhi - xlo)
        ypad = 0.05 * (yhi - ylo)
        xlo, xhi = xlo - xpad, xhi + xpad
        ylo, yhi = ylo - ypad, yhi + ypad
    else:
        xlo, xhi, ylo, yhi = 0.0, 1.0, 0.0, 1.0

    plot_w = WIDTH - MARGIN_L - MARGIN_R
    plot_h = HEIGHT - MARGIN_T - MARGIN_B

    def sx(v: float) -> float:
        return MARGIN_L + (v - xlo) / (xhi - xlo) * plot_w

    def sy(v: float) -> float:
        return MARGIN_T + plot_h - (v - ylo) / (yhi - ylo) * plot_h

    out = []
    out.append(f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" '
               f'height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">')
    out.append(f'<rect width="{WIDTH}" height="{HEIGHT}" fill="#ffffff"/>')
    if title:
        out.append(f'<text x="{WIDTH / 2:.1f}" y="24" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="15">{title}</text>')
    ax_y = MARGIN_T + plot_h
    out.append(f'<line x1="{MARGIN_L}" y1="{ax_y}" x2="{MARGIN_L + plot_w}" '
               f'y2="{ax_y}" stroke="#000000"/>')
    out.append(f'<line x1="{MARGIN_L}" y1="{MARGIN_T}" x2="{MARGIN_L}" '
               f'y2="{ax_y}" stroke="#000000"/>')
    for tv in _ticks(xlo, xhi):
        x = sx(tv)
        out.append(f'<line x1="{_fmt(x)}" y1="{ax_y}" x2="{_fmt(x)}" '
                   f'y2="{ax_y + 5}" stroke="#000000"/>')
        out.append(f'<text x="{_fmt(x)}" y="{ax_y + 20}" text-anchor="middle" '
                   f'font-family="sans-serif" font-size="11">{_tick_label(tv)}</text>')
    for tv in _ticks(ylo, yhi):
        y = sy(tv)
        out.append(f'<line x1="{MARGIN_L - 5}" y1="{_fmt(y)}" x2="{MARGIN_L}" '
                   f'y2="{_fmt(y)}" stroke="#000000"/>')
        out.append(f'<text x="{MARGIN_L - 8}" y="{_fmt(y + 4)}" text-anchor="end" '
                   f'font-family="sans-serif" font-size="11">{_tick_label(tv)}</text>')
    out.append(f'<text x="{MARGIN_L + plot_w / 2:.1f}" y="{HEIGHT - 12}" '
               f'text-anchor="middle" font-family="sans-serif" font-size="13">{xlabel}</text>')
    out.append(f'<text x="18" y="{MARGIN_T + plot_h / 2:.1f}" text-anchor="middle" '
               f'font-family="sans-serif" font-size="13" '
               f'transform="rotate(-90 18 {MARGIN_T + plot_h / 2:.1f})">{ylabel}</text>')

    fallback = 0
    for si, (name, pts) in enumerate(sorted(series.items())):
        if name in STYLE:
            color, marker = STYLE[name]
        else:
            color, marker = FALLBACK_COLORS[fallback % len(FALLBACK_COLORS)], "circle"
            fallback += 1
        for px, py in pts:
            x, y = sx(px), sy(py)
            if marker == "circle":
                out.append(f'<circle cx="{_fmt(x)}" cy="{_fmt(y)}" r="3.5" '
                           f'fill="{color}" fill-opacity="0.75"/>')
            else:
                out.append(f'<path d="M {_fmt(x - 3.5)} {_fmt(y - 3.5)} L {_fmt(x + 3.5)} '
                           f'{_fmt(y + 3.5)} M {_fmt(x - 3.5)} {_fmt(y + 3.5)} '
                           f'L {_fmt(x + 3.5)} {_fmt(y - 3.5)}" stroke="{color}" '
                           f'stroke-width="1.4"/>')
        lx = MARGIN_L + plot_w - 128
        ly = MARGIN_T + 16 + 18 * si
        if marker == "circle":
            out.append(f'<circle cx="{lx}" cy="{ly - 4}" r="3.5" fill="{color}" '
                       f'fill-opacity="0.75"/>')
        else:
            out.append(f'<path d="M {lx - 3.5} {ly - 7.5} L {lx + 3.5} {ly - 0.5} '
                       f'M {lx - 3.5} {ly - 0.5} L {lx + 3.5} {ly - 7.5}" '
                       f'stroke="{color}" stroke-width="1.4"/>')
        out.append(f'<text x="{lx + 10}" y="{ly}" font-family="sans-serif" '
                   f'font-size="12">{name}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"
