# -*- coding: utf-8 -*-

"""Analyze a system: spectrum, embryo and the check of its coefficients"""

import dataclasses
import logging
import textwrap
import time

import numpy as np
import seamm_util.printing as printing
from seamm_util.printing import FormattedText as __
from tabulate import tabulate

import lyapunov_da
from .analyze_parameters import AnalyzeParameters
from .atlas import Chart
from .embryo import compute_coefficients, pde_residual
from .field_model import jacobian_at_origin, load_system, n_monomials_up_to
from .spectral import diagonalize, transform_field

logger = logging.getLogger(__name__)
printer = printing.getPrinter("lyapunov-da")


class Analyze(object):
    """Compute the generation-0 embryo of a system and report on it.

    The other commands derive from this class for the header, the loading of
    the system and the output helpers.
    """

    title = "Analyze"
    description = "Eigenvalues, embryo coefficients and PDE residual of a system"
    parameter_class = AnalyzeParameters

    def __init__(self, config):
        """Initialize the command from a RunConfig"""

        logger.debug("Creating {} {}".format(self.__class__.__name__, self))

        self.config = config
        self._metadata = lyapunov_da.metadata
        self.timings = {}

    @property
    def header(self):
        """A printable header for this section of output"""
        return "{}: {}".format(self.title, self.config.system_name)

    @property
    def version(self):
        """The semantic version of this module."""
        return lyapunov_da.__version__

    def values(self):
        """The settings as a dictionary, for filling in the report text."""
        config = self.config
        P = dataclasses.asdict(config)
        P["degree"] = config.default_degree()
        P["system"] = config.system_name
        P["sensitivity"] = ", ".join(str(p) for p in config.sensitivity)
        return P

    def description_text(self, P=None):
        """Prepare information about what this command will do"""
        if not P:
            P = self.values()
        text = (
            "The Jacobian at the origin is diagonalized, the field is written in "
            "eigencoordinates and the series of the Lyapunov function is computed "
            "to degree {degree}. The coefficients are checked by forming the "
            "residual of the defining PDE independently of the recurrence."
        )
        if P["sensitivity"]:
            text += (
                " The radius of the estimate along the coordinate axes is compared "
                "for degrees {sensitivity}."
            )
        return self.header + "\n" + __(text, **P, indent=4 * " ").__str__()

    def table(self, rows, headers="keys", colalign=None, indent=4):
        text = tabulate(rows, headers=headers, tablefmt="psql", colalign=colalign)
        printer.normal(textwrap.indent(text, indent * " "))

    def timed(self, phase, function, *args, **kwargs):
        t0 = time.perf_counter()
        result = function(*args, **kwargs)
        self.timings[phase] = self.timings.get(phase, 0.0) + time.perf_counter() - t0
        return result

    def load_field(self):
        path = self.config.system_path()
        field = self.timed("parse", load_system, path)
        logger.info("Read {} ({} variables)".format(path, field.dim))
        return field

    def print_timings(self):
        rows = {
            "Phase": list(self.timings),
            "Time (s)": [self.timings[phase] for phase in self.timings],
        }
        printer.normal("    Wall time per phase:")
        self.table(rows, colalign=("left", "decimal"), indent=8)

    def run(self):
        """Run the analysis, returning the exit code."""
        config = self.config
        printer.important(self.description_text())
        printer.important("")

        field = self.load_field()
        A = jacobian_at_origin(field)
        spectrum = self.timed("diagonalize", diagonalize, A)
        tf = self.timed("transform", transform_field, field, spectrum)
        p = config.default_degree()
        embryo = self.timed("coefficients", compute_coefficients, tf, spectrum, p)
        residual = self.timed("residual", pde_residual, embryo, tf, p)

        config.out.mkdir(parents=True, exist_ok=True)
        path = config.out / "{}.embryo.json".format(config.system_name)
        path.write_text(embryo.to_json() + "\n", encoding="utf-8")

        results = self.analyze(spectrum, embryo, residual)
        printer.normal("    Eigenvalues of the Jacobian at the origin:")
        self.table(
            {
                "i": list(range(1, spectrum.dim + 1)),
                "Re": [v.real for v in spectrum.eigenvalues],
                "Im": [v.imag for v in spectrum.eigenvalues],
            },
            colalign=("center", "decimal", "decimal"),
            indent=8,
        )
        text = (
            "The Jacobian is diagonalizable; the eigenvector matrix has condition "
            "number {condition:.3g}."
        )
        printer.normal(__(text, **results, indent=4 * " "))
        rows = []
        for key in ("coefficients", "max_coefficient", "residual", "relative_residual"):
            rows.append((self._metadata["results"][key]["description"], results[key]))
        self.table(rows, headers=("Result", "Value"), colalign=("left", "decimal"))
        text = "The embryo was written to {path}"
        printer.normal(__(text, path=path, indent=4 * " "))

        if config.sensitivity:
            self.sensitivity(field, spectrum, tf)

        self.print_timings()
        return 0

    def analyze(self, spectrum, embryo, residual):
        """Collect the results of the analysis."""
        largest = embryo.series.max_abs()
        return {
            "eigenvalues": spectrum.eigenvalues,
            "condition": float(np.linalg.cond(spectrum.S)),
            "coefficients": n_monomials_up_to(spectrum.dim, embryo.degree),
            "max_coefficient": largest,
            "residual": residual,
            "relative_residual": residual / largest if largest > 0 else 0.0,
        }

    def sensitivity(self, field, spectrum, tf):
        """The radius of the generation-0 estimate along each axis for several p."""
        n = field.dim
        rows = {"p": []}
        for k in range(n):
            rows["+x{}".format(k + 1)] = []
            rows["-x{}".format(k + 1)] = []
        for p in sorted(set(self.config.sensitivity)):
            embryo = self.timed("sensitivity", compute_coefficients, tf, spectrum, p)
            chart = Chart(embryo, spectrum)
            rows["p"].append(p)
            for k in range(n):
                for sign in (1, -1):
                    x = np.zeros(n)
                    x[k] = sign
                    r = chart.margin(spectrum.to_eigen(x))
                    radius = 1.0 / r if r > 0 else float("inf")
                    rows["{}x{}".format("+" if sign > 0 else "-", k + 1)].append(radius)
        printer.normal("    Radius of the estimate along the coordinate axes:")
        self.table(rows, indent=8)
