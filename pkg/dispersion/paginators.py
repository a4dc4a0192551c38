# django imports
from rest_framework.pagination import PageNumberPagination


# ---------------------------------------------------------------------------- #
#                         StandardResultsSetPagination                         #
# ---------------------------------------------------------------------------- #


class StandardResultsSetPagination(PageNumberPagination):
    """
    Page through figure rows.

    - Default page size is 20 rows per page.
    - Clients can override the page size using the 'page_size' query parameter.
    - Maximum allowed page size is capped at 500, enough for a whole default figure.

    Example:
        GET /figures/fig1/?page=2&page_size=40
    """
    page_size = 20
    page_size_query_param = 'page_size'
    max_page_size = 500
