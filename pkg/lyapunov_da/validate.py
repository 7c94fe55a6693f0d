# -*- coding: utf-8 -*-

"""Check the points claimed by an atlas against integrated trajectories"""

import collections
import logging

import numpy as np
import scipy.stats.qmc
from seamm_util.printing import FormattedText as __

from .analyze import printer
from .atlas import map_chunks
from .field_model import parse_system
from .oracle import Verdict, simulate_many
from .sample import Sample
from .validate_parameters import ValidateParameters

logger = logging.getLogger(__name__)

CHUNK_SIZE = 64
MAX_BATCHES = 50


class Validate(Sample):
    """Integrate quasi-random points claimed by the atlas.

    A claimed point whose trajectory diverges shows that the atlas is not a
    subset of the domain of attraction, and the command fails.
    """

    title = "Validate"
    description = "Compare the atlas with the fate of trajectories"
    parameter_class = ValidateParameters

    def description_text(self, P=None):
        """Prepare information about what this command will do"""
        if not P:
            P = self.values()
        text = (
            "{samples} points of a Halton sequence claimed by the atlas are "
            "integrated with the fourth order Runge-Kutta method, step {dt:g}, up "
            "to t = {t_final:g}. A trajectory converges when its norm falls below "
            "{eps_conv:g} and diverges when it exceeds {r_max:g}."
        )
        P = {**P, **P["oracle"]}
        return self.header + "\n" + __(text, **P, indent=4 * " ").__str__()

    def claimed_points(self, atlas, count):
        """The first `count` points of the Halton sequence that the atlas claims.

        Returns
        -------
        X : numpy.ndarray
            The points, shape (count, n) or fewer if the atlas claims little of
            the sampling box.
        margin : numpy.ndarray
            r / level of each point in its claiming chart.
        """
        n = atlas.dim
        lows, highs = self.config.default_bounds(n, atlas.system_id)
        sampler = scipy.stats.qmc.Halton(d=n, scramble=False)
        sampler.fast_forward(1)
        batch = max(4 * count, 1024)
        points = []
        margins = []
        found = 0
        for _ in range(MAX_BATCHES):
            if found >= count:
                break
            X = scipy.stats.qmc.scale(sampler.random(batch), lows, highs)
            member, _, margin = atlas.classify(X, workers=self.config.ncores)
            points.append(X[member])
            margins.append(margin[member])
            found += int(member.sum())
        else:
            if found < count:
                logger.warning(
                    "Only {} of {} sample points are claimed by the atlas".format(
                        found, count
                    )
                )
        if not points:
            return np.zeros((0, n)), np.zeros(0)
        return np.concatenate(points)[:count], np.concatenate(margins)[:count]

    def run(self):
        """Validate the atlas, returning 1 if any claimed point diverges."""
        config = self.config
        printer.important(self.description_text())
        printer.important("")

        atlas = self.load_atlas()
        if atlas.system:
            field = self.timed("parse", parse_system, atlas.system)
        else:
            field = self.load_field()

        if config.samples == 0:
            X, margin = np.zeros((0, atlas.dim)), np.zeros(0)
        else:
            X, margin = self.timed("sample", self.claimed_points, atlas, config.samples)

        oracle = config.oracle

        def integrate(chunk):
            return simulate_many(
                field,
                chunk,
                oracle.t_final,
                oracle.dt,
                oracle.eps_conv,
                oracle.r_max,
            )

        chunks = [X[i : i + CHUNK_SIZE] for i in range(0, X.shape[0], CHUNK_SIZE)]
        outcomes = [
            outcome
            for part in self.timed(
                "integrate", map_chunks, integrate, chunks, config.ncores
            )
            for outcome in part
        ]
        counts = collections.Counter(outcome.verdict for outcome in outcomes)

        printer.normal("    Fate of {} claimed points:".format(len(outcomes)))
        self.table(
            {
                "Verdict": [verdict.value for verdict in Verdict],
                "Count": [counts.get(verdict, 0) for verdict in Verdict],
            },
            colalign=("left", "right"),
            indent=8,
        )

        undecided = [
            r for o, r in zip(outcomes, margin) if o.verdict is Verdict.UNDECIDED
        ]
        if undecided:
            text = (
                "The undecided points have r/level between {low:.4f} and "
                "{high:.4f}"
            )
            printer.normal(
                __(text, low=min(undecided), high=max(undecided), indent=4 * " ")
            )

        diverged = [
            (x, r, o)
            for x, r, o in zip(X, margin, outcomes)
            if o.verdict is Verdict.DIVERGED
        ]
        if diverged:
            printer.normal("    Claimed points that diverge:")
            self.table(
                [
                    (
                        ", ".join("{:.6f}".format(v) for v in x),
                        r,
                        o.time,
                    )
                    for x, r, o in diverged
                ],
                headers=("x", "r/level", "t"),
                colalign=("left", "decimal", "decimal"),
                indent=8,
            )
            logger.warning(
                "{} points claimed by the atlas diverge".format(len(diverged))
            )

        self.print_timings()
        return 1 if diverged else 0
