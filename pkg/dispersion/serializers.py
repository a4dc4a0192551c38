# python imports
import json
import math
from pathlib import Path

# django imports
from rest_framework import serializers

# in app imports
from dispersion.exceptions import DispersionError
from dispersion.oracle import check_stencil
from dispersion.sweeps import FIGURES
from dispersion.types import (
    EmParticleConfig,
    FiniteDifferenceSpec,
    ParticleConfig,
    QuadratureSpec,
    SweepGrid,
)
from dispersion.utils import parse_key_values


# ---------------------------------------------------------------------------- #
#                                    fields                                    #
# ---------------------------------------------------------------------------- #


class FiniteFloatField(serializers.FloatField):
    """FloatField that also refuses inf and nan."""

    def to_internal_value(self, data):
        value = super().to_internal_value(data)
        if not math.isfinite(value):
            raise serializers.ValidationError("A finite number is required.")
        return value


class FloatListField(serializers.ListField):
    """List of finite floats; a comma separated string is accepted too."""
    child = FiniteFloatField()

    def to_internal_value(self, data):
        if isinstance(data, str):
            data = [item for item in data.split(',') if item.strip()]
        elif isinstance(data, (list, tuple)) and len(data) == 1 and isinstance(data[0], str):
            data = [item for item in data[0].split(',') if item.strip()]
        return super().to_internal_value(data)


def _positive(value, name):
    if value <= 0.0:
        raise serializers.ValidationError(f"{name} must be positive.")
    return value


def parse_grid(text, variable):
    """
    Read ``start:stop:count[:scale]`` into a SweepGrid.

    Raises:
        serializers.ValidationError: malformed text or an invalid grid.
    """
    parts = [part.strip() for part in str(text).split(':')]
    if len(parts) not in (3, 4):
        raise serializers.ValidationError("Grid must read start:stop:count or start:stop:count:scale.")
    data = {'variable': variable, 'start': parts[0], 'stop': parts[1], 'count': parts[2]}
    if len(parts) == 4:
        data['scale'] = parts[3]
    serializer = SweepGridSerializer(data=data)
    if not serializer.is_valid():
        raise serializers.ValidationError(serializer.errors)
    return serializer.create_grid()


# ---------------------------------------------------------------------------- #
#                              ParticleSerializer                              #
# ---------------------------------------------------------------------------- #


class ParticleSerializer(serializers.Serializer):
    """
    Scalar test particle: coupling g, mass m and distance x.

    Defaults are the unit particle g = m = x = 1 used by the figures.
    """
    g = FiniteFloatField(default=1.0)
    m = FiniteFloatField(default=1.0)
    x = FiniteFloatField(default=1.0)

    def validate_m(self, value):
        return _positive(value, "Mass m")

    def validate_x(self, value):
        return _positive(value, "Distance x")

    def create_config(self):
        data = self.validated_data
        return ParticleConfig(g=data['g'], m=data['m'], x=data['x'])


class EmParticleSerializer(serializers.Serializer):
    e = FiniteFloatField(default=1.0)
    m = FiniteFloatField(default=1.0)
    x = FiniteFloatField(default=1.0)

    def validate_m(self, value):
        return _positive(value, "Mass m")

    def validate_x(self, value):
        return _positive(value, "Distance x")

    def create_config(self):
        data = self.validated_data
        return EmParticleConfig(e=data['e'], m=data['m'], x=data['x'])


# ---------------------------------------------------------------------------- #
#                              SweepGridSerializer                             #
# ---------------------------------------------------------------------------- #


class SweepGridSerializer(serializers.Serializer):
    variable = serializers.ChoiceField(choices=['tau_over_x', 'sigma_over_x'])
    start = FiniteFloatField()
    stop = FiniteFloatField()
    count = serializers.IntegerField(min_value=2, max_value=100000)
    scale = serializers.ChoiceField(choices=['linear', 'log'], default='linear')

    def validate(self, data):
        """
        Ensure start < stop, a positive start on log scales and no negative
        measuring times or widths.
        """
        if data['start'] >= data['stop']:
            raise serializers.ValidationError("Grid start must be below stop.")
        if data['scale'] == 'log' and data['start'] <= 0.0:
            raise serializers.ValidationError("Logarithmic grids need a positive start.")
        if data['start'] < 0.0:
            raise serializers.ValidationError("Grid values must be nonnegative.")
        if data['variable'] == 'sigma_over_x' and data['start'] <= 0.0:
            raise serializers.ValidationError("Smearing widths must be positive.")
        return data

    def create_grid(self):
        return SweepGrid(**self.validated_data)


# ---------------------------------------------------------------------------- #
#                                EvalSerializer                                #
# ---------------------------------------------------------------------------- #


class EvalSerializer(ParticleSerializer):
    tau = FiniteFloatField(min_value=0.0)
    sigma = FiniteFloatField(required=False, allow_null=True, default=None)
    n_sigma = FiniteFloatField(required=False, allow_null=True, default=None)
    threshold = FiniteFloatField(required=False, allow_null=True, default=None)
    tol = FiniteFloatField(required=False, allow_null=True, default=None)
    allow_singular = serializers.BooleanField(default=False)
    format = serializers.ChoiceField(choices=['json', 'text'], default='json')

    def validate_sigma(self, value):
        return value if value is None else _positive(value, "Smearing width sigma")

    def validate_n_sigma(self, value):
        return value if value is None else _positive(value, "Window half-width n_sigma")

    def validate_threshold(self, value):
        return value if value is None else _positive(value, "Validity threshold")

    def validate_tol(self, value):
        return value if value is None else _positive(value, "Tolerance")

    def quadrature_spec(self):
        tol = self.validated_data.get('tol')
        if tol is None:
            return QuadratureSpec.from_settings()
        return QuadratureSpec.from_settings(abs_tol=tol, rel_tol=tol)


# ---------------------------------------------------------------------------- #
#                               FigureSerializer                               #
# ---------------------------------------------------------------------------- #


class FigureSerializer(serializers.Serializer):
    """
    Figure request. ``sigma`` values are widths in the same unit as ``x``;
    the table is indexed by sigma/x.
    """
    name = serializers.ChoiceField(choices=list(FIGURES))
    x = FiniteFloatField(default=1.0)
    sigma = FloatListField(required=False, default=list)
    n_sigma = FiniteFloatField(required=False, allow_null=True, default=None)
    grid = serializers.CharField(required=False, allow_null=True, default=None)
    tol = FiniteFloatField(required=False, allow_null=True, default=None)
    format = serializers.ChoiceField(choices=['csv', 'json'], default='csv')

    def validate_x(self, value):
        return _positive(value, "Distance x")

    def validate_sigma(self, value):
        for sigma in value:
            _positive(sigma, "Smearing width sigma")
        return value

    def validate_n_sigma(self, value):
        return value if value is None else _positive(value, "Window half-width n_sigma")

    def validate_tol(self, value):
        return value if value is None else _positive(value, "Tolerance")

    def validate(self, data):
        """Ensure fig3 has widths and the grid parses for the figure's variable."""
        if data['name'] == 'fig3' and not data['sigma']:
            raise serializers.ValidationError({'sigma': ["fig3 needs one or more smearing widths."]})
        variable = 'sigma_over_x' if data['name'] == 'depth' else 'tau_over_x'
        if data.get('grid'):
            try:
                data['grid'] = parse_grid(data['grid'], variable)
            except serializers.ValidationError as exc:
                raise serializers.ValidationError({'grid': exc.detail})
            if data['name'] == 'fig3' and data['grid'].start <= 0.0:
                raise serializers.ValidationError({'grid': ["Smeared curves need strictly positive tau/x."]})
        data['sigmas_over_x'] = [sigma / data['x'] for sigma in data['sigma']]
        return data

    def quadrature_spec(self):
        tol = self.validated_data.get('tol')
        if tol is None:
            return None
        return QuadratureSpec.from_settings(abs_tol=tol, rel_tol=tol)


# ---------------------------------------------------------------------------- #
#                               CompareSerializer                              #
# ---------------------------------------------------------------------------- #


class CompareSerializer(EmParticleSerializer):
    grid = serializers.CharField(required=False, allow_null=True, default=None)
    format = serializers.ChoiceField(choices=['csv', 'json'], default='csv')

    def validate_grid(self, value):
        if not value:
            return None
        return parse_grid(value, 'tau_over_x')


# ---------------------------------------------------------------------------- #
#                               VerifySerializer                               #
# ---------------------------------------------------------------------------- #


class VerifySerializer(serializers.Serializer):
    grid = FloatListField(required=False, default=list)
    fast = serializers.BooleanField(default=False)
    perturbation = FiniteFloatField(default=0.0)
    format = serializers.ChoiceField(choices=['text', 'json'], default='text')

    def validate_grid(self, value):
        """Oracle grid points must be positive and clear of the round trip tau/x = 2."""
        unit = ParticleConfig(g=1.0, m=1.0, x=1.0)
        fd = FiniteDifferenceSpec.for_distance(unit.x)
        for tau_over_x in value:
            _positive(tau_over_x, "Grid point tau/x")
            try:
                check_stencil(unit, fd, tau_over_x)
            except DispersionError as exc:
                raise serializers.ValidationError(str(exc))
        return value


# ---------------------------------------------------------------------------- #
#                              load_config_file                                #
# ---------------------------------------------------------------------------- #


def load_config_file(path):
    """
    Defaults from a config file: a JSON object, or ``key=value`` lines.

    Raises:
        serializers.ValidationError: unreadable or malformed file.
    """
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as exc:
        raise serializers.ValidationError({'config': [f"Cannot read {path}: {exc.strerror}."]})

    if text.lstrip().startswith('{'):
        try:
            options = json.loads(text)
        except json.JSONDecodeError as exc:
            raise serializers.ValidationError({'config': [f"Invalid JSON in {path}: {exc.msg}."]})
        return {str(key).replace('-', '_'): value for key, value in options.items()}

    try:
        return parse_key_values(text)
    except ValueError as exc:
        raise serializers.ValidationError({'config': [str(exc)]})


def merge_options(file_options, flag_options):
    """Flags override the file; a flag left at None does not."""
    merged = dict(file_options)
    merged.update((key, value) for key, value in flag_options.items() if value is not None)
    return merged
