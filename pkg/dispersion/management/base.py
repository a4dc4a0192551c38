# python imports
import json
import logging
from contextlib import contextmanager

# django imports
from django.core.management.base import BaseCommand, CommandError
from rest_framework import serializers

# in app imports
from dispersion.exceptions import DispersionError, DomainError, SingularLocusError
from dispersion.reports import write_output
from dispersion.serializers import load_config_file, merge_options


logger = logging.getLogger(__name__)

EXIT_VERIFICATION_FAILED = 1
EXIT_USAGE = 2
EXIT_SINGULAR = 3


# ---------------------------------------------------------------------------- #
#                               DispersionCommand                              #
# ---------------------------------------------------------------------------- #


class DispersionCommand(BaseCommand):
    """
    Shared plumbing of the dispersion commands.

    - ``--config`` supplies defaults, explicit flags override it.
    - Serializer errors leave with exit code 2, singular requests with 3.
    - Output goes to ``--out`` or to stdout.

    Every flag defaults to None so that an omitted flag never masks the
    config file.
    """

    # names of the options handed to the serializer
    fields = ()

    def add_output_arguments(self, parser, formats):
        parser.add_argument('--config', help="JSON object or key=value file with default flag values.")
        parser.add_argument('--out', help="Write to this path instead of stdout.")
        parser.add_argument('--format', choices=formats, default=None, help=f"Output format, default {formats[0]}.")

    # --------------------------------- validated -------------------------------- #

    def validated(self, serializer_class, options):
        """Merge config file and flags, then validate; exit 2 on any error."""
        flags = {name: options.get(name) for name in self.fields}
        try:
            file_options = load_config_file(options['config']) if options.get('config') else {}
        except serializers.ValidationError as exc:
            raise CommandError(self._format_errors(exc.detail), returncode=EXIT_USAGE)

        data = merge_options(file_options, flags)
        serializer = serializer_class(data=data)
        if not serializer.is_valid():
            raise CommandError(self._format_errors(serializer.errors), returncode=EXIT_USAGE)
        return serializer

    @staticmethod
    def _format_errors(errors):
        return "Invalid arguments: " + json.dumps(errors, sort_keys=True)

    # ----------------------------- dispersion_errors ---------------------------- #

    @contextmanager
    def dispersion_errors(self):
        """Map library exceptions onto command exit codes."""
        try:
            yield
        except SingularLocusError as exc:
            raise CommandError(str(exc), returncode=EXIT_SINGULAR)
        except DomainError as exc:
            raise CommandError(str(exc), returncode=EXIT_USAGE)
        except DispersionError as exc:
            logger.error("%s failed: %s", type(self).__module__.rsplit('.', 1)[-1], exc)
            raise CommandError(f"{type(exc).__name__}: {exc}", returncode=EXIT_VERIFICATION_FAILED)

    def emit(self, text, path=None):
        write_output(text, path=path, stream=self.stdout)
