"""Matplotlib figures for sweep results, written as deterministic SVG."""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from .errors import PlotSpecError  # noqa: E402
from .sweeps import unit_of  # noqa: E402

STYLE = {
    "font.size": 10,
    "axes.labelsize": 11,
    "axes.linewidth": 0.8,
    "lines.linewidth": 1.5,
    "legend.frameon": False,
    "figure.figsize": (6.0, 4.0),
    "svg.hashsalt": "eomsim",
    "svg.fonttype": "path",
    "path.simplify": False,
}

LINESTYLES = ["-", "--", "-.", ":"]


def axis_label(name):
    unit = unit_of(name)
    if unit in ("1", "bool"):
        return name
    return f"{name} [{unit}]"


def _figure_1d(result, observables):
    x = np.array([c[0] for c in result.coords], dtype=float)
    fig, ax = plt.subplots()
    for k, name in enumerate(observables):
        (line,) = ax.plot(x, result.column(name), LINESTYLES[k % len(LINESTYLES)], label=name)
        line.set_gid(f"series-{name}")
    ax.set_xlabel(axis_label(result.axis_names[0]))
    ax.set_ylabel("value")
    ax.legend()
    return fig


def _figure_2d(result, observables):
    if len(observables) != 1:
        raise PlotSpecError("a 2D sweep is drawn as a heatmap of exactly one observable")
    name = observables[0]
    nx, ny = result.shape()
    z = result.column(name).reshape(nx, ny)
    x, y = (a.values() for a in result.spec.axes)
    fig, ax = plt.subplots()
    mesh = ax.pcolormesh(x, y, np.ma.masked_invalid(z).T, shading="nearest", cmap="viridis")
    mesh.set_gid(f"heatmap-{name}")
    cbar = fig.colorbar(mesh, ax=ax)
    cbar.set_label(name)
    ax.set_xlabel(axis_label(result.axis_names[0]))
    ax.set_ylabel(axis_label(result.axis_names[1]))
    for a, setter in zip(result.spec.axes, (ax.set_xscale, ax.set_yscale)):
        setter(a.scale)
    return fig


def render_figure(result, observables=None):
    """Line chart for a 1D sweep, heatmap with colorbar for a 2D sweep."""
    observables = list(observables or result.spec.plot or result.spec.columns[:1])
    bad = [o for o in observables if o not in result.spec.columns]
    if bad:
        raise PlotSpecError(f"observable(s) not in the result: {', '.join(bad)}")
    if any(o == "genuine_tripartite" for o in observables) and len(result.spec.axes) == 2:
        raise PlotSpecError("boolean observables cannot be drawn as a heatmap")
    with plt.rc_context(STYLE):
        if len(result.spec.axes) == 1:
            return _figure_1d(result, observables)
        if len(result.spec.axes) == 2:
            return _figure_2d(result, observables)
    raise PlotSpecError("only 1D and 2D sweeps can be plotted")


def render_svg(result, observables=None):
    """Standalone SVG document (str); identical input gives identical bytes."""
    import io

    with plt.rc_context(STYLE):
        fig = render_figure(result, observables)
        buf = io.StringIO()
        try:
            fig.savefig(buf, format="svg", metadata={"Date": None, "Creator": None})
        finally:
            plt.close(fig)
    return buf.getvalue()


def save_svg(result, path, observables=None):
    text = render_svg(result, observables)
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc.strerror}") from exc
    return path
