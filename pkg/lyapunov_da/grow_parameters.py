# -*- coding: utf-8 -*-
"""Control parameters for growing an atlas
"""

import logging

from .parameters import RunParameters, degree_parameters, oracle_parameters

logger = logging.getLogger(__name__)


class GrowParameters(RunParameters):
    """The control parameters for the growth of an atlas"""

    parameters = {
        **degree_parameters,
        "steps": {
            "default": 3,
            "kind": "integer",
            "default_units": "",
            "enumeration": tuple(),
            "format_string": "d",
            "description": "Number of steps:",
            "help_text": "How many times to add charts around the estimate.",
        },
        "points": {
            "default": 3,
            "kind": "integer",
            "default_units": "",
            "enumeration": tuple(),
            "format_string": "d",
            "description": "Centers per step:",
            "help_text": "The number of new expansion centers in each step.",
        },
        "level": {
            "default": 1.0,
            "kind": "float",
            "default_units": "",
            "enumeration": tuple(),
            "format_string": ".3f",
            "description": "Membership level:",
            "help_text": (
                "Points whose root-test value is below this level are members. "
                "Values below 1 give a more conservative estimate."
            ),
        },
        "criterion": {
            "default": "top",
            "kind": "enumeration",
            "default_units": "",
            "enumeration": ("top", "tail"),
            "format_string": "s",
            "description": "Root test:",
            "help_text": (
                "'top' uses the highest degree block only; 'tail' the largest "
                "root over the upper half of the degree blocks."
            ),
        },
        "tol": {
            "default": 0.02,
            "kind": "float",
            "default_units": "",
            "enumeration": tuple(),
            "format_string": ".3f",
            "description": "Boundary tolerance:",
            "help_text": "How close below the level boundary samples must be.",
        },
        "w max factor": {
            "default": 1.0e3,
            "kind": "float",
            "default_units": "",
            "enumeration": tuple(),
            "format_string": ".3g",
            "description": "W limit factor:",
            "help_text": (
                "Centers with |W| above this factor times the median |W| on the "
                "first boundary are not used."
            ),
        },
        "w max": {
            "default": None,
            "kind": "float",
            "default_units": "",
            "enumeration": tuple(),
            "format_string": ".3g",
            "description": "W limit:",
            "help_text": "An absolute limit on |W| at new centers.",
        },
        "directions per point": {
            "default": 64,
            "kind": "integer",
            "default_units": "",
            "enumeration": tuple(),
            "format_string": "d",
            "description": "Directions per center:",
            "help_text": "Boundary directions sampled for each center wanted.",
        },
        "verify": {
            "default": True,
            "kind": "boolean",
            "default_units": "",
            "enumeration": ("yes", "no"),
            "format_string": "s",
            "description": "Calibrate charts:",
            "help_text": (
                "Integrate points from the center of each chart out to its "
                "boundary and lower its level until they all converge."
            ),
        },
        "verify directions": {
            "default": 64,
            "kind": "integer",
            "default_units": "",
            "enumeration": tuple(),
            "format_string": "d",
            "description": "Calibration rays:",
            "help_text": (
                "Rays sampled per chart during calibration in the plane; (n - 1)^2 "
                "times as many in n dimensions."
            ),
        },
        "shrink": {
            "default": 0.9,
            "kind": "float",
            "default_units": "",
            "enumeration": tuple(),
            "format_string": ".3f",
            "description": "Shrink factor:",
            "help_text": "Extra factor applied whenever a chart's level is lowered.",
        },
        "safety": {
            "default": 0.9,
            "kind": "float",
            "default_units": "",
            "enumeration": tuple(),
            "format_string": ".3f",
            "description": "Safety factor:",
            "help_text": "Factor applied to the level at which all samples converge.",
        },
        "min level": {
            "default": 0.1,
            "kind": "float",
            "default_units": "",
            "enumeration": tuple(),
            "format_string": ".3f",
            "description": "Smallest level:",
            "help_text": (
                "Charts that need a level below this fraction of the membership "
                "level are rejected."
            ),
        },
        **oracle_parameters,
    }

    def __init__(self, defaults={}, data=None):
        """Initialize the instance, by default from the default
        parameters given in the class"""

        super().__init__(defaults={**GrowParameters.parameters, **defaults}, data=data)
