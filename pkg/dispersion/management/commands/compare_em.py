# in app imports
from dispersion.management.base import DispersionCommand
from dispersion.reports import RunReport, render_csv, render_json
from dispersion.serializers import CompareSerializer
from dispersion.sweeps import em_comparison_table


class Command(DispersionCommand):
    help = "Scalar (dv)^2 next to the electromagnetic perpendicular and parallel dispersions over tau/x."

    fields = ('e', 'm', 'x', 'grid', 'format')

    def add_arguments(self, parser):
        parser.add_argument('--e', type=float, help="Charge; also used as the scalar coupling (default 1).")
        parser.add_argument('--m', type=float, help="Mass (default 1).")
        parser.add_argument('--x', type=float, help="Distance from the plane (default 1).")
        parser.add_argument('--grid', help="start:stop:count[:log] over tau/x (default 0:10:101).")
        self.add_output_arguments(parser, ['csv', 'json'])

    def handle(self, *args, **options):
        serializer = self.validated(CompareSerializer, options)
        data = serializer.validated_data

        params = {key: value for key, value in data.items() if key != 'grid'}
        params['grid'] = options.get('grid')
        report = RunReport(command='compare_em', params=params)
        with report.timed(), self.dispersion_errors():
            table = em_comparison_table(serializer.create_config(), data['grid'])
        report.results = table.records
        report.summary = {'rows': len(table.records), 'empty': table.singular_count}

        if data['format'] == 'json':
            self.emit(render_json(report), options.get('out'))
        else:
            self.emit(render_csv(table.columns, table.records), options.get('out'))
