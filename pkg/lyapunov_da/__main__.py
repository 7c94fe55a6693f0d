# !/usr/bin/env python
# -*- coding: utf-8 -*-

"""Run the domain of attraction estimator from the command line."""

import sys

from .domain_of_attraction import DomainOfAttraction


def run(argv=None):
    """Parse the command line and run the command it names."""
    driver = DomainOfAttraction()
    sys.exit(driver.run(argv))


if __name__ == "__main__":
    run()
