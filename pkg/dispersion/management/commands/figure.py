# python imports
import logging

# in app imports
from dispersion.management.base import DispersionCommand
from dispersion.reports import RunReport, render_csv, render_json
from dispersion.serializers import FigureSerializer
from dispersion.sweeps import FIGURES, figure_table


logger = logging.getLogger(__name__)


class Command(DispersionCommand):
    help = (
        "Emit figure data: fig1 (dv)^2, fig2 (dx)^2/x^2, fig3 smeared (dv)^2 per sigma, "
        "depth the smeared well against sigma/x. Values are in units of g^2/m^2."
    )

    fields = ('name', 'x', 'sigma', 'n_sigma', 'grid', 'tol', 'format')

    def add_arguments(self, parser):
        parser.add_argument('name', choices=FIGURES)
        parser.add_argument('--x', type=float, help="Distance the --sigma widths refer to (default 1).")
        parser.add_argument('--sigma', type=float, nargs='+', help="Smearing widths; fig3 needs at least one.")
        parser.add_argument('--n-sigma', dest='n_sigma', type=float, help="Smearing window half-width in sigmas.")
        parser.add_argument('--grid', help="start:stop:count[:log] over tau/x, or sigma/x for depth.")
        parser.add_argument('--tol', type=float, help="Absolute and relative quadrature tolerance.")
        self.add_output_arguments(parser, ['csv', 'json'])

    def handle(self, *args, **options):
        serializer = self.validated(FigureSerializer, options)
        data = serializer.validated_data

        params = {key: value for key, value in data.items() if key != 'grid'}
        params['grid'] = options.get('grid')
        report = RunReport(command=f"figure {data['name']}", params=params)
        with report.timed(), self.dispersion_errors():
            table = figure_table(
                data['name'],
                grid=data['grid'],
                sigmas=data['sigmas_over_x'],
                n_sigma=data['n_sigma'],
                q=serializer.quadrature_spec(),
            )
        report.results = table.records
        report.summary = {'rows': len(table.records), 'empty': table.singular_count}
        logger.info("figure %s: %d rows, %d empty, %.3f s", data['name'], len(table.records),
                    table.singular_count, report.duration)

        if data['format'] == 'json':
            self.emit(render_json(report), options.get('out'))
        else:
            self.emit(render_csv(table.columns, table.records), options.get('out'))
