# -*- coding: utf-8 -*-
"""Control parameters for validating an atlas with trajectories
"""

import logging

from .parameters import RunParameters, grid_parameters, oracle_parameters

logger = logging.getLogger(__name__)


class ValidateParameters(RunParameters):
    """The control parameters for validating an atlas"""

    parameters = {
        **grid_parameters,
        "samples": {
            "default": 500,
            "kind": "integer",
            "default_units": "",
            "enumeration": tuple(),
            "format_string": "d",
            "description": "Number of points:",
            "help_text": "How many claimed points to integrate.",
        },
        **oracle_parameters,
    }

    def __init__(self, defaults={}, data=None):
        """Initialize the instance, by default from the default
        parameters given in the class"""

        super().__init__(
            defaults={**ValidateParameters.parameters, **defaults}, data=data
        )
