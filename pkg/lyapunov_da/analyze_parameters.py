# -*- coding: utf-8 -*-
"""Control parameters for analyzing a system: spectrum, embryo and residual
"""

import logging

from .parameters import RunParameters, degree_parameters

logger = logging.getLogger(__name__)


class AnalyzeParameters(RunParameters):
    """The control parameters for the analysis of a system"""

    parameters = {
        **degree_parameters,
        "sensitivity": {
            "default": None,
            "kind": "integer list",
            "default_units": "",
            "enumeration": tuple(),
            "format_string": "",
            "description": "Degrees to compare:",
            "help_text": (
                "Also compute the embryo at these degrees, e.g. '10,20,30', and "
                "report the radius of the estimate along each coordinate axis."
            ),
        },
    }

    def __init__(self, defaults={}, data=None):
        """Initialize the instance, by default from the default
        parameters given in the class"""

        super().__init__(
            defaults={**AnalyzeParameters.parameters, **defaults}, data=data
        )
