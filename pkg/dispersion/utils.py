# python imports
import logging
from concurrent.futures import ThreadPoolExecutor

# in app imports
from dispersion.conf import dispersion_settings


logger = logging.getLogger(__name__)


# ---------------------------------------------------------------------------- #
#                                  ordered_map                                 #
# ---------------------------------------------------------------------------- #


def ordered_map(func, items, workers=None):
    """
    Apply ``func`` to every item on a thread pool.

    Results come back in the order of ``items`` whatever order the workers
    finish in, so sweeps built on top stay deterministic.

    Args:
        func (callable): Per-point computation. Exceptions propagate.
        items (iterable): Inputs.
        workers (int): Pool size; defaults to ``SWEEP_WORKERS``. One or
            fewer runs inline.

    Returns:
        list
    """
    items = list(items)
    if workers is None:
        workers = dispersion_settings.SWEEP_WORKERS
    if workers <= 1 or len(items) <= 1:
        return [func(item) for item in items]

    logger.debug("Mapping %d points over %d workers.", len(items), workers)
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(func, items))


# ---------------------------------------------------------------------------- #
#                                parse_key_values                              #
# ---------------------------------------------------------------------------- #


def parse_key_values(text):
    """
    Read ``key=value`` lines into a dict of strings.

    Blank lines and lines starting with ``#`` are skipped. Keys are
    normalized to underscores so ``allow-singular`` and ``allow_singular``
    mean the same flag.
    """
    options = {}
    for number, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith('#'):
            continue
        if '=' not in line:
            raise ValueError(f"Line {number} is not of the form key=value: {line!r}")
        key, value = line.split('=', 1)
        options[key.strip().replace('-', '_')] = value.strip()
    return options
