"""Emit gnuplot scripts that redraw the frequency, R and R/N panels.

The scripts read the exported CSV files directly and draw to an SVG next to
the script. Nothing is rendered here.
"""
from __future__ import annotations

from pathlib import Path

from .fit import PowerLawFit

FIGURES = ("freqs", "range", "relrange")

_HEADER = """\
# generated by equirange {version}
set terminal svg size 800,600 enhanced
set output {output}
set datafile separator ","
set key top right
"""


def _q(s) -> str:
    return '"' + str(s).replace("\\", "\\\\").replace('"', '\\"') + '"'


def _column(header: list[str], name: str) -> int:
    return header.index(name) + 1


def freqs_script(trajectories: list[tuple[str, list[str]]], output, version: str = "") -> str:
    """Relative frequency against N for each run, with a dashed line at 1/k.

    ``trajectories`` pairs each CSV path with its header row. For two
    outcomes only ``f_0`` (heads) is drawn per run; otherwise every ``f_i``.
    """
    ks = {sum(1 for h in header if h.startswith("count_")) for _, header in trajectories}
    if len(ks) != 1:
        raise ValueError("trajectory files disagree on the number of outcomes")
    k = ks.pop()
    expected = 1.0 / k
    lines = [_HEADER.format(version=version, output=_q(output)),
             "set logscale x",
             'set xlabel "N"',
             'set ylabel "relative frequency"',
             f"expected = {expected!r}",
             ""]
    series = []
    for path, header in trajectories:
        xcol = _column(header, "n")
        names = ["f_0"] if k == 2 else [f"f_{i}" for i in range(k)]
        for name in names:
            series.append(f"{_q(path)} using {xcol}:{_column(header, name)} "
                          f"skip 1 with lines title {_q(Path(path).stem + ' ' + name)}")
    series.append('expected with lines dashtype 2 lc rgb "black" title "1/k"')
    lines.append("plot " + ", \\\n     ".join(series))
    return "\n".join(lines) + "\n"


def scaling_script(summary_path, header: list[str], figure: str, fit: PowerLawFit,
                   output, version: str = "") -> str:
    """Log-log R (``figure="range"``) or R/N (``"relrange"``) with its fitted line."""
    if figure == "range":
        ycol, ecol, ylabel, sym = "mean_range", "se_range", "R", "alpha"
    elif figure == "relrange":
        ycol, ecol, ylabel, sym = "mean_rel_range", "se_rel_range", "R/N", "beta"
    else:
        raise ValueError(f"unknown figure {figure!r}")
    x, y, e = (_column(header, c) for c in ("n", ycol, ecol))
    lines = [_HEADER.format(version=version, output=_q(output)),
             "set logscale xy",
             'set xlabel "N"',
             f"set ylabel {_q(ylabel)}",
             f"# fitted slope = {fit.exponent!r}",
             f"# slope standard error = {fit.exponent_se!r}",
             f"slope = {fit.exponent!r}",
             f"log_amplitude = {fit.log_amplitude!r}",
             f"fit_min_n = {fit.fit_window_min_n}",
             "fitted(x) = x >= fit_min_n ? 10**log_amplitude * x**slope : 1/0",
             f'set label 1 sprintf("{sym} = %.4f (+/- %.4f)", slope, {fit.exponent_se!r}) '
             "at graph 0.05, graph 0.08",
             "",
             f"plot {_q(summary_path)} using {x}:{y}:{e} skip 1 with yerrorbars "
             f"pt 7 title {_q(ylabel)}, \\\n"
             f'     fitted(x) with lines lw 2 title "power-law fit"']
    return "\n".join(lines) + "\n"
