# -*- coding: utf-8 -*-

"""The command-line driver: analyze, grow, sample and validate"""

import argparse
import json
import logging
from pathlib import Path
import sys

import seamm_util.printing as printing

import lyapunov_da
from .analyze import Analyze
from .field_model import SystemDefinitionError
from .grow import Grow
from .parameters import RunConfig, RunParameters
from .sample import Sample
from .spectral import SpectralError
from .validate import Validate

logger = logging.getLogger(__name__)

LOG_LEVELS = ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL")


class DomainOfAttraction(object):
    """Estimate the domain of attraction of a polynomial system.

    Each command is a class with a table of parameters; the table provides the
    command-line flags and the keys accepted in a JSON configuration file.
    Flags override the file, and the defaults fill in the rest.
    """

    commands = {
        "analyze": Analyze,
        "grow": Grow,
        "sample": Sample,
        "validate": Validate,
    }

    # The handler printing the report, replaced on each run.
    report_handler = None

    def __init__(self):
        logger.debug("Creating DomainOfAttraction {}".format(self))

    @property
    def version(self):
        """The semantic version of this module."""
        return lyapunov_da.__version__

    def create_parser(self):
        """Setup the command-line parser, one subcommand per command."""
        parser = argparse.ArgumentParser(
            prog="lyapunov-da",
            description=(
                "Estimate the domain of attraction of an asymptotically stable "
                "steady state of a polynomial system from the series of its "
                "optimal Lyapunov function."
            ),
        )
        parser.add_argument(
            "--version", action="version", version="%(prog)s " + self.version
        )
        subparsers = parser.add_subparsers(dest="command", metavar="command")
        subparsers.required = True
        for name, command in self.commands.items():
            subparser = subparsers.add_parser(
                name, help=command.description, description=command.description
            )
            subparser.add_argument(
                "--config",
                default=None,
                help="A JSON file with parameter values; flags override it.",
            )
            subparser.add_argument(
                "--log-level",
                default="WARNING",
                type=str.upper,
                choices=LOG_LEVELS,
                help="The level of diagnostic messages on stderr.",
            )
            command.parameter_class().add_arguments(subparser)
        return parser

    def setup_logging(self, level):
        """Diagnostics to stderr; the report, plain, to stdout."""
        root = logging.getLogger("lyapunov_da")
        for handler in list(root.handlers):
            root.removeHandler(handler)
        handler = logging.StreamHandler(sys.stderr)
        handler.setFormatter(
            logging.Formatter("%(levelname)s:%(name)s: %(message)s")
        )
        root.addHandler(handler)
        root.setLevel(level)

        job = printing.getPrinter()
        job.setLevel(printing.NORMAL)
        if DomainOfAttraction.report_handler is not None:
            job.removeHandler(DomainOfAttraction.report_handler)
        handler = logging.StreamHandler(sys.stdout)
        handler.setFormatter(logging.Formatter(fmt="{message:s}", style="{"))
        job.addHandler(handler)
        DomainOfAttraction.report_handler = handler

    def read_config(self, path, parameters):
        """The values in a JSON configuration file that apply to this command."""
        data = json.loads(Path(path).read_text(encoding="utf-8"))
        if not isinstance(data, dict):
            raise ValueError("The configuration file must hold a JSON object")
        known = set(RunParameters.parameters)
        for command in self.commands.values():
            known.update(command.parameter_class.parameters)
        values = {}
        for key, value in data.items():
            name = key.replace("_", " ").replace("-", " ")
            if name in parameters:
                values[name] = value
            elif name in known:
                logger.debug("Ignoring '{}', not used by this command".format(key))
            else:
                raise ValueError("Unknown parameter '{}' in {}".format(key, path))
        return values

    def configure(self, args):
        """The RunConfig from the configuration file and the flags."""
        command = self.commands[args.command]
        P = command.parameter_class()
        if args.config is not None:
            P.assign(self.read_config(args.config, P))
        flags = {
            key: value
            for key, value in vars(args).items()
            if key not in ("command", "config", "log_level")
        }
        P.assign(flags)
        logger.debug("Parameters: {}".format(P.values_to_dict()))
        return RunConfig.from_values(P.values_to_dict())

    def run(self, argv=None):
        """Run a command, returning the exit code.

        0 on success, 1 when validation finds a claimed point that diverges,
        and 2 for errors in the input.
        """
        parser = self.create_parser()
        try:
            args = parser.parse_args(argv)
        except SystemExit as e:
            return e.code if isinstance(e.code, int) else 2

        self.setup_logging(args.log_level)
        try:
            config = self.configure(args)
            command = self.commands[args.command](config)
            return command.run()
        except SystemDefinitionError as e:
            logger.error("Error in the system definition: {}".format(e))
        except SpectralError as e:
            logger.error("The linearization is not suitable: {}".format(e))
        except (OSError, ValueError, KeyError) as e:
            logger.error(str(e))
        return 2
