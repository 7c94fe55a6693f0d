# -*- coding: utf-8 -*-
"""Control parameters for sampling an atlas on a grid
"""

import logging

from .parameters import RunParameters, grid_parameters

logger = logging.getLogger(__name__)


class SampleParameters(RunParameters):
    """The control parameters for sampling an atlas on a grid"""

    parameters = {
        **grid_parameters,
        "resolution": {
            "default": (201,),
            "kind": "integer list",
            "default_units": "",
            "enumeration": tuple(),
            "format_string": "",
            "description": "Grid points:",
            "help_text": "Points along each axis, one value or one per axis.",
        },
        "slice": {
            "default": "",
            "kind": "string",
            "default_units": "",
            "enumeration": tuple(),
            "format_string": "s",
            "description": "Slice:",
            "help_text": (
                "For three or more variables, fix one coordinate, e.g. 'x3=0', "
                "to sample a plane."
            ),
        },
    }

    def __init__(self, defaults={}, data=None):
        """Initialize the instance, by default from the default
        parameters given in the class"""

        super().__init__(
            defaults={**SampleParameters.parameters, **defaults}, data=data
        )
