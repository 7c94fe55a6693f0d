# -*- coding: utf-8 -*-

"""Sample the membership of an atlas on a regular grid"""

import csv
import logging

from matplotlib.colors import ListedColormap
from matplotlib.figure import Figure
import numpy as np
from seamm_util.printing import FormattedText as __

from .analyze import Analyze, printer
from .atlas import Atlas
from .oracle import UnknownExactDA, exact_boundary_function
from .parameters import parse_slice
from .sample_parameters import SampleParameters

logger = logging.getLogger(__name__)

# Not a member, claimed by the chart at the origin, claimed by a later chart.
REGION_COLORS = ("#ffffff", "#555555", "#bbbbbb")


class Sample(Analyze):
    """Classify the points of a grid and write them as CSV, with a plot in 2-D."""

    title = "Sample"
    description = "Membership of grid points in the estimated domain of attraction"
    parameter_class = SampleParameters

    @property
    def header(self):
        return "{}: {}".format(self.title, self.config.atlas_path())

    def description_text(self, P=None):
        """Prepare information about what this command will do"""
        if not P:
            P = self.values()
        text = (
            "Every point of a regular grid is tested against the charts of the "
            "atlas. The result is written as CSV, one row per point"
        )
        if P["slice"]:
            text += ", in the plane {slice}"
        text += "."
        return self.header + "\n" + __(text, **P, indent=4 * " ").__str__()

    def load_atlas(self):
        path = self.config.atlas_path()
        if not path.exists():
            raise FileNotFoundError("The atlas file '{}' does not exist".format(path))
        atlas = self.timed("load", Atlas.load, path)
        logger.info(
            "Read the atlas {} with {} charts".format(path, len(atlas.charts))
        )
        return atlas

    def grid(self, atlas):
        """The grid points, and the 1-D coordinates along the free axes.

        Returns
        -------
        X : numpy.ndarray
            Points of shape (N, n) in C order of the free axes.
        axes : [int]
            The coordinates that vary.
        coordinates : [numpy.ndarray]
            The values along each varying coordinate.
        """
        config = self.config
        n = atlas.dim
        lows, highs = config.default_bounds(n, atlas.system_id)
        fixed = parse_slice(config.slice, n)
        if fixed is not None and n < 3:
            raise ValueError("A slice needs a system of three or more variables")
        axes = [k for k in range(n) if fixed is None or k != fixed[0]]
        if fixed is not None and len(config.resolution) == len(axes):
            resolution = tuple(config.resolution)
        else:
            resolution = config.grid_resolution(n)
            resolution = tuple(resolution[k] for k in axes)

        coordinates = [
            np.linspace(lows[k], highs[k], count) for k, count in zip(axes, resolution)
        ]
        mesh = np.meshgrid(*coordinates, indexing="ij")
        X = np.zeros((mesh[0].size, n))
        for k, values in zip(axes, mesh):
            X[:, k] = values.reshape(-1)
        if fixed is not None:
            X[:, fixed[0]] = fixed[1]
        return X, axes, coordinates

    def run(self):
        """Sample the atlas, returning the exit code."""
        config = self.config
        printer.important(self.description_text())
        printer.important("")

        atlas = self.load_atlas()
        X, axes, coordinates = self.grid(atlas)
        member, index, margin = self.timed(
            "classify", atlas.classify, X, workers=config.ncores
        )

        config.out.mkdir(parents=True, exist_ok=True)
        path = config.out / "{}.grid.csv".format(atlas.system_id or "system")
        self.timed("write", self.write_csv, path, X, member, index, margin)

        rows = [
            (self._metadata["results"]["charts"]["description"], len(atlas.charts)),
            ("grid points", X.shape[0]),
            (self._metadata["results"]["members"]["description"], int(member.sum())),
        ]
        self.table(rows, headers=("Result", "Value"), colalign=("left", "right"))
        printer.normal(__("The grid was written to {path}", path=path, indent=4 * " "))

        if len(axes) == 2:
            svg = path.with_suffix(".svg")
            self.timed(
                "plot", self.plot, svg, atlas, X, axes, coordinates, member, index
            )
            text = "The plot was written to {path}"
            printer.normal(__(text, path=svg, indent=4 * " "))

        self.print_timings()
        return 0

    def write_csv(self, path, X, member, index, margin):
        n = X.shape[1]
        with open(path, "w", newline="", encoding="utf-8") as fd:
            writer = csv.writer(fd, lineterminator="\n")
            writer.writerow(
                ["x{}".format(k + 1) for k in range(n)]
                + ["member", "chart_index", "margin"]
            )
            for x, m, i, r in zip(X, member, index, margin):
                writer.writerow(
                    ["{:.12g}".format(v) for v in x]
                    + [int(m), int(i), "{:.12g}".format(r)]
                )

    def plot(self, path, atlas, X, axes, coordinates, member, index):
        """Write the regions of the charts, and the exact boundary if known.

        The chart at the origin is drawn in dark grey, the later charts in
        light grey and the exact boundary as a thick black line.
        """
        shape = tuple(len(c) for c in coordinates)
        regions = np.where(member, np.where(index == 0, 1, 2), 0).reshape(shape)
        x, y = coordinates

        figure = Figure(figsize=(6, 6))
        ax = figure.add_subplot()
        ax.pcolormesh(
            x,
            y,
            regions.T,
            cmap=ListedColormap(REGION_COLORS),
            vmin=0,
            vmax=2,
            shading="nearest",
        )
        try:
            boundary = exact_boundary_function(atlas.system_id)
        except UnknownExactDA:
            logger.debug("No exact boundary for '{}'".format(atlas.system_id))
        else:
            values = boundary(X).reshape(shape)
            if values.min() < 0 < values.max():
                ax.contour(x, y, values.T, levels=[0], colors="black", linewidths=2)
        ax.set_xlabel("x{}".format(axes[0] + 1))
        ax.set_ylabel("x{}".format(axes[1] + 1))
        ax.set_aspect("equal")
        ax.set_title(
            "{}: {} charts".format(atlas.system_id or "system", len(atlas.charts))
        )
        figure.savefig(path, format="svg", metadata={"Date": None})
