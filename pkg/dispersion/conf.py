# django imports
from django.conf import settings
from django.core.signals import setting_changed


DEFAULTS = {
    'QUADRATURE': {
        'abs_tol': 1e-9,
        'rel_tol': 1e-9,
        'max_subdivisions': 500,
    },
    'ORACLE_QUADRATURE': {
        'abs_tol': 1e-13,
        'rel_tol': 1e-12,
        'max_subdivisions': 800,
    },
    'FINITE_DIFFERENCE_STEP': 1e-3,
    'SMEARING_N_SIGMA': 8.0,
    'SERIES_TOLERANCE': 1e-15,
    'SERIES_MAX_TERMS': 2000,
    'SERIES_Z_ENVELOPE': 50.0,
    'SWEEP_WORKERS': 4,
    'SINGULAR_ULPS': 4,
}


# ---------------------------------------------------------------------------- #
#                              DispersionSettings                              #
# ---------------------------------------------------------------------------- #


class DispersionSettings:
    """
    Lazy accessor for the ``DISPERSION`` settings dict.

    Keys missing from the project settings fall back to ``DEFAULTS``.
    Nested dicts (the quadrature blocks) are merged key by key so a project
    may override a single tolerance.

    Example:
        dispersion_settings.QUADRATURE['abs_tol']
    """

    def __init__(self, defaults=None):
        self.defaults = defaults or DEFAULTS
        self._cached = set()

    @property
    def user_settings(self):
        if not hasattr(self, '_user_settings'):
            self._user_settings = getattr(settings, 'DISPERSION', {})
        return self._user_settings

    def __getattr__(self, attr):
        if attr not in self.defaults:
            raise AttributeError(f"Invalid dispersion setting: '{attr}'")

        default = self.defaults[attr]
        value = self.user_settings.get(attr, default)
        if isinstance(default, dict):
            value = {**default, **value}

        self._cached.add(attr)
        setattr(self, attr, value)
        return value

    def reload(self):
        for attr in self._cached:
            delattr(self, attr)
        self._cached.clear()
        if hasattr(self, '_user_settings'):
            delattr(self, '_user_settings')


dispersion_settings = DispersionSettings(DEFAULTS)


def reload_dispersion_settings(*args, **kwargs):
    if kwargs['setting'] == 'DISPERSION':
        dispersion_settings.reload()


setting_changed.connect(reload_dispersion_settings)
