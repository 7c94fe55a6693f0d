# -*- coding: utf-8 -*-

"""Grow an atlas of charts around the estimate at the origin"""

import logging

from seamm_util.printing import FormattedText as __

from .analyze import Analyze, printer
from .atlas import GrowthParameters, grow_atlas
from .grow_parameters import GrowParameters

logger = logging.getLogger(__name__)


class Grow(Analyze):
    """Build the atlas and write it, with its growth log, to a JSON file."""

    title = "Grow"
    description = "Estimate the domain of attraction by re-expanding the embryo"
    parameter_class = GrowParameters

    def description_text(self, P=None):
        """Prepare information about what this command will do"""
        if not P:
            P = self.values()
        text = (
            "The series of the Lyapunov function is computed to degree {degree} "
            "and re-expanded in {steps} step(s) at up to {points} point(s) per "
            "step near the boundary of the estimate. Points with a root-test "
            "value below the level of a chart, at most {level}, are taken to be "
            "in the domain of attraction ('{criterion}' criterion)."
        )
        if P["verify"]:
            text += (
                " The level of each chart is calibrated by integrating points on "
                "rays from its center to its boundary, {verify_directions} rays in "
                "the plane, lowering the level until they all converge and then "
                "multiplying it by {safety}."
            )
        return self.header + "\n" + __(text, **P, indent=4 * " ").__str__()

    def growth_parameters(self):
        config = self.config
        return GrowthParameters(
            level=config.level,
            criterion=config.criterion,
            selection=config.selection,
            verify=config.verify,
            verify_directions=config.verify_directions,
            shrink=config.shrink,
            safety=config.safety,
            min_level=config.min_level,
            oracle=config.oracle,
            workers=config.ncores,
        )

    def run(self):
        """Grow the atlas, returning the exit code."""
        config = self.config
        printer.important(self.description_text())
        printer.important("")

        field = self.load_field()
        atlas = self.timed(
            "growth",
            grow_atlas,
            field,
            config.default_degree(),
            config.steps,
            config.points,
            self.growth_parameters(),
            system_id=config.system_name,
        )

        config.out.mkdir(parents=True, exist_ok=True)
        path = config.atlas_path()
        path.parent.mkdir(parents=True, exist_ok=True)
        atlas.save(path)

        self.print_steps(atlas)
        self.print_centers(atlas)
        text = "The atlas with {n} charts was written to {path}"
        printer.normal(__(text, n=len(atlas.charts), path=path, indent=4 * " "))
        self.print_timings()
        return 0

    def print_steps(self, atlas):
        """The time for each step, next to the published timings if known."""
        published = self._metadata["examples"].get(self.config.system_name, {})
        published = published.get("published", {})
        rows = {"Step": [], "Charts": [], "Level": [], "Time (s)": [], "Note": []}
        if published:
            rows["Published"] = []
        for record in atlas.log:
            rows["Step"].append(record.step)
            accepted = sum(1 for c in record.centers if c.accepted)
            rows["Charts"].append(1 if record.step == 0 else accepted)
            if record.step == 0:
                rows["Level"].append(atlas.charts[0].level)
            else:
                levels = [c.level for c in record.centers if c.accepted]
                rows["Level"].append(min(levels) if levels else "")
            rows["Time (s)"].append(record.seconds)
            rows["Note"].append(record.message)
            if published:
                key = "step {}".format(record.step)
                if record.step == 0:
                    rows["Published"].append("order {}".format(published["order"]))
                else:
                    rows["Published"].append(published.get(key, ""))
        printer.normal("    Growth of the atlas:")
        self.table(rows, indent=8)
        if published:
            text = (
                "The published timings are for other hardware and are shown for "
                "interest only."
            )
            printer.normal(__(text, indent=8 * " "))
        if atlas.w_max is not None:
            text = "Centers are limited to |W| <= {w_max:.6g}"
            printer.normal(__(text, w_max=atlas.w_max, indent=4 * " "))

    def print_centers(self, atlas):
        rows = []
        for record in atlas.log:
            for center in record.centers:
                rows.append(
                    (
                        record.step,
                        ", ".join("{:.4f}".format(v) for v in center.x),
                        center.w_value,
                        center.parent,
                        center.margin,
                        "" if center.level is None else center.level,
                        "yes" if center.accepted else center.reason,
                    )
                )
        if not rows:
            return
        printer.normal("    Expansion centers:")
        self.table(
            rows,
            headers=("Step", "x", "|W|", "Parent", "r/level", "Level", "Accepted"),
            colalign=(
                "center", "left", "decimal", "center", "decimal", "decimal", "left"
            ),
            indent=8,
        )
