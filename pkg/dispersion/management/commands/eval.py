# in app imports
from dispersion.evaluations import evaluate_point
from dispersion.management.base import DispersionCommand
from dispersion.reports import RunReport, render_json
from dispersion.serializers import EvalSerializer


class Command(DispersionCommand):
    help = "Evaluate the dispersions of a scalar test particle at one measuring time."

    fields = ('g', 'm', 'x', 'tau', 'sigma', 'n_sigma', 'threshold', 'tol', 'allow_singular', 'format')

    def add_arguments(self, parser):
        parser.add_argument('--g', type=float, help="Coupling constant (default 1).")
        parser.add_argument('--m', type=float, help="Mass (default 1).")
        parser.add_argument('--x', type=float, help="Distance from the boundary (default 1).")
        parser.add_argument('--tau', type=float, help="Measuring time.")
        parser.add_argument('--sigma', type=float, help="Also report the Gaussian-smeared (dv)^2 for this width.")
        parser.add_argument('--n-sigma', dest='n_sigma', type=float, help="Smearing window half-width in sigmas.")
        parser.add_argument('--threshold', type=float, help="Also report where |(dx)^2|/x^2 reaches this value.")
        parser.add_argument('--tol', type=float, help="Absolute and relative quadrature tolerance.")
        parser.add_argument('--allow-singular', dest='allow_singular', action='store_true', default=None,
                            help="Report tau = 2x instead of failing with exit code 3.")
        self.add_output_arguments(parser, ['json', 'text'])

    def handle(self, *args, **options):
        serializer = self.validated(EvalSerializer, options)
        data = serializer.validated_data
        cfg = serializer.create_config()

        report = RunReport(command='eval', params=dict(data))
        with report.timed(), self.dispersion_errors():
            report.results, notes = evaluate_point(
                cfg,
                data['tau'],
                sigma=data['sigma'],
                n_sigma=data['n_sigma'],
                threshold=data['threshold'],
                q=serializer.quadrature_spec(),
                allow_singular=data['allow_singular'],
            )
        report.summary = {'points': 1, **notes}

        if data['format'] == 'text':
            self.emit(self.render_text(report), options.get('out'))
        else:
            self.emit(render_json(report), options.get('out'))

    @staticmethod
    def render_text(report):
        width = max(len(result['quantity']) for result in report.results)
        lines = []
        for result in report.results:
            value = 'singular' if not result['regular'] else result['value']
            lines.append(f"{result['quantity']:<{width}}  {value!s:<24}  {result['provenance']}")
        return '\n'.join(lines) + '\n'
