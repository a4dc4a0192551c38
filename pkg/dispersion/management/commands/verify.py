# python imports
import argparse

# django imports
from django.core.management.base import CommandError

# in app imports
from dispersion.management.base import EXIT_VERIFICATION_FAILED, DispersionCommand
from dispersion.reports import RunReport, render_json
from dispersion.serializers import VerifySerializer
from dispersion.verification import build_checks, render_table, run_checks, summarize


CANARY_PERTURBATION = 0.01


class Command(DispersionCommand):
    help = (
        "Check the closed forms against the field oracle, the finite-difference order, "
        "the numerics substrate and the smearing asymptote. Exits 1 on any failure."
    )

    fields = ('grid', 'fast', 'perturbation', 'format')

    def add_arguments(self, parser):
        parser.add_argument('--grid', help="Comma separated tau/x values for the oracle comparisons.")
        parser.add_argument('--fast', action='store_true', default=None, help="Reduced grids.")
        parser.add_argument('--perturb-canary', dest='perturbation', action='store_const',
                            const=CANARY_PERTURBATION, default=None, help=argparse.SUPPRESS)
        self.add_output_arguments(parser, ['text', 'json'])

    def handle(self, *args, **options):
        serializer = self.validated(VerifySerializer, options)
        data = serializer.validated_data

        report = RunReport(command='verify', params=dict(data))
        checks = build_checks(grid=data['grid'], fast=data['fast'], perturbation=data['perturbation'])
        with report.timed():
            results = run_checks(checks)
        report.results = results
        report.summary = summarize(results)

        if data['format'] == 'json':
            self.emit(render_json(report), options.get('out'))
        else:
            text = render_table(results)
            text += f"{report.summary['passed']}/{report.summary['total']} checks passed in {report.duration:.1f} s\n"
            self.emit(text, options.get('out'))

        if report.summary['failed']:
            raise CommandError(
                f"{len(report.summary['failed'])} check(s) failed: {', '.join(report.summary['failed'])}",
                returncode=EXIT_VERIFICATION_FAILED,
            )
