# python imports
import logging

# django imports
from rest_framework import status, viewsets
from rest_framework.response import Response

# in app imports
from dispersion.evaluations import evaluate_point
from dispersion.exceptions import DispersionError, DomainError, SingularLocusError
from dispersion.paginators import StandardResultsSetPagination
from dispersion.reports import jsonable
from dispersion.serializers import EvalSerializer, FigureSerializer
from dispersion.sweeps import figure_table


logger = logging.getLogger(__name__)


def _query_data(request, list_fields=()):
    """Query parameters as serializer input; ``format`` belongs to DRF."""
    data = request.query_params.dict()
    data.pop('format', None)
    for name in list_fields:
        if name in request.query_params:
            data[name] = request.query_params.getlist(name)
    return data


def _failure(message, errors, code):
    return Response(
        {
            "success": False,
            "message": message,
            "data": {},
            "errors": errors,
        },
        status=code,
    )


def _dispersion_failure(exc):
    if isinstance(exc, SingularLocusError):
        return _failure("The request lies on a singular locus.", [str(exc)], status.HTTP_422_UNPROCESSABLE_ENTITY)
    if isinstance(exc, DomainError):
        return _failure("Parameters are outside the physical domain.", [str(exc)], status.HTTP_400_BAD_REQUEST)
    logger.error("Computation failed: %s", exc)
    return _failure("The computation did not converge.", [str(exc)], status.HTTP_500_INTERNAL_SERVER_ERROR)


# ---------------------------------------------------------------------------- #
#                               EvaluationViewSet                              #
# ---------------------------------------------------------------------------- #


class EvaluationViewSet(viewsets.ViewSet):
    """
    Read-only mirror of ``manage.py eval``.

    Provided actions:
    - list: GET /evaluations/?g=1&m=1&x=1&tau=1[&sigma=0.1][&threshold=0.1]
    """

    http_method_names = ['get']

    # ----------------------------------- list ----------------------------------- #

    def list(self, request, *args, **kwargs):
        serializer = EvalSerializer(data=_query_data(request))
        if not serializer.is_valid():
            return _failure(
                "Invalid parameters. Please check the query and try again.",
                serializer.errors,
                status.HTTP_400_BAD_REQUEST,
            )

        data = serializer.validated_data
        try:
            results, notes = evaluate_point(
                serializer.create_config(),
                data['tau'],
                sigma=data['sigma'],
                n_sigma=data['n_sigma'],
                threshold=data['threshold'],
                q=serializer.quadrature_spec(),
                allow_singular=data['allow_singular'],
            )
        except DispersionError as exc:
            return _dispersion_failure(exc)

        return Response(
            {
                "success": True,
                "message": "Dispersions evaluated successfully.",
                "data": jsonable({"params": dict(data), "results": results, "summary": notes}),
                "errors": [],
            },
            status=status.HTTP_200_OK,
        )


# ---------------------------------------------------------------------------- #
#                                 FigureViewSet                                #
# ---------------------------------------------------------------------------- #


class FigureViewSet(viewsets.GenericViewSet):
    """
    Read-only mirror of ``manage.py figure``: the rows of one figure,
    paginated with StandardResultsSetPagination.

    Provided actions:
    - retrieve: GET /figures/<name>/?sigma=0.1&grid=0.1:4:40
    """

    pagination_class = StandardResultsSetPagination
    http_method_names = ['get']

    # --------------------------------- retrieve --------------------------------- #

    def retrieve(self, request, name=None, *args, **kwargs):
        serializer = FigureSerializer(data={**_query_data(request, list_fields=('sigma',)), 'name': name})
        if not serializer.is_valid():
            return _failure(
                "Invalid figure request. Please check the query and try again.",
                serializer.errors,
                status.HTTP_400_BAD_REQUEST,
            )

        data = serializer.validated_data
        try:
            table = figure_table(
                data['name'],
                grid=data['grid'],
                sigmas=data['sigmas_over_x'],
                n_sigma=data['n_sigma'],
                q=serializer.quadrature_spec(),
            )
        except DispersionError as exc:
            return _dispersion_failure(exc)

        page = self.paginate_queryset(table.records)
        count = self.paginator.page.paginator.count
        return Response(
            {
                "success": True,
                "message": f"Figure {data['name']} computed successfully.",
                "pagination": {
                    "count": count,
                    "next": self.paginator.get_next_link(),
                    "previous": self.paginator.get_previous_link(),
                },
                "data": {"columns": list(table.columns), "rows": jsonable(page)},
                "errors": [],
            },
            status=status.HTTP_200_OK,
        )
