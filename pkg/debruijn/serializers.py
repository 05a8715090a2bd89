from rest_framework import serializers

from words.serializers import RationalField
from zimin_lab.exceptions import BadProbabilities
from .stationary import parse_probabilities


class ProbabilityTupleField(serializers.Field):
    """Text like '-,4/5,0,3/5' <-> tuple of Fraction | None."""

    def __init__(self, q=2, **kwargs):
        self.q = q
        super().__init__(**kwargs)

    def to_internal_value(self, data):
        if isinstance(data, (list, tuple)):
            data = ','.join('-' if v is None else str(v) for v in data)
        try:
            return parse_probabilities(data, self.q)
        except BadProbabilities as exc:
            raise serializers.ValidationError(str(exc.message))

    def to_representation(self, value):
        field = RationalField()
        rendered = []
        for entry in value:
            if entry is None:
                rendered.append(None)
            elif isinstance(entry, tuple):
                rendered.append([field.to_representation(v) for v in entry])
            else:
                rendered.append(field.to_representation(entry))
        return rendered


class DeBruijnParamsSerializer(serializers.Serializer):
    k = serializers.IntegerField(min_value=1, max_value=8, default=4)
    q = serializers.IntegerField(min_value=2, default=2)
    max_len = serializers.IntegerField(min_value=3, required=False, allow_null=True, default=None)
    literal = serializers.BooleanField(default=False)
    restarts = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    seed = serializers.IntegerField(required=False, allow_null=True, default=None)
    warm_starts = serializers.BooleanField(default=True)

    def validate(self, attrs):
        if attrs.get('max_len') is not None and attrs['max_len'] > attrs['k']:
            raise serializers.ValidationError({'max_len': 'must not exceed k'})
        return attrs


class StationarySolutionSerializer(serializers.Serializer):
    """{p, q_dist, r, d_lower, d_upper_float}; d_lower is exact in rational mode."""
    p = serializers.SerializerMethodField()
    q_dist = serializers.SerializerMethodField()
    r = serializers.SerializerMethodField()
    d_lower = serializers.SerializerMethodField()
    d_upper_float = serializers.SerializerMethodField()
    reducible = serializers.BooleanField()
    mode = serializers.CharField()

    def _value(self, value, mode):
        return RationalField().to_representation(value) if mode == 'rational' else float(value)

    def get_p(self, obj):
        if obj.mode == 'rational':
            return ProbabilityTupleField().to_representation(obj.p)
        return [None if v is None else (list(v) if isinstance(v, tuple) else float(v)) for v in obj.p]

    def get_q_dist(self, obj):
        return [self._value(v, obj.mode) for v in obj.q_dist]

    def get_r(self, obj):
        return {name: self._value(v, obj.mode) for name, v in obj.r.items()}

    def get_d_lower(self, obj):
        return self._value(obj.objective, obj.mode) if obj.mode == 'rational' else None

    def get_d_upper_float(self, obj):
        return float(obj.objective)


class FamilyFrequenciesSerializer(serializers.Serializer):
    period = serializers.SerializerMethodField()
    q_dist = serializers.ListField(child=RationalField())
    implied_p = ProbabilityTupleField()
    r = serializers.DictField(child=RationalField())
    estimate = RationalField()

    def get_period(self, obj):
        return obj.period.to_string()


class OptimizationReportSerializer(serializers.Serializer):
    label = serializers.CharField()
    d_upper_float = serializers.FloatField()
    best_start = serializers.CharField(source='best.start')
    best_p = serializers.ListField(source='best.p', child=serializers.FloatField())
    restarts = serializers.SerializerMethodField()
    verified = serializers.SerializerMethodField()

    def get_restarts(self, obj):
        return len(obj.restarts)

    def get_verified(self, obj):
        if obj.verified is None:
            return None
        return StationarySolutionSerializer(obj.verified).data
