from fractions import Fraction

from rest_framework import serializers

from words.serializers import RationalField


class SeriesParamsSerializer(serializers.Serializer):
    q = serializers.IntegerField(min_value=2, default=2)
    n = serializers.IntegerField(min_value=2, required=False, default=3)
    N = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    M = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    bits = serializers.IntegerField(min_value=16, required=False, allow_null=True, default=None)
    digits = serializers.IntegerField(min_value=1, max_value=60, default=10)
    tol = RationalField(required=False, default=Fraction(1, 10 ** 12))

    def validate_tol(self, value):
        if value <= 0:
            raise serializers.ValidationError('must be positive')
        return value


class SequenceParamsSerializer(serializers.Serializer):
    kind = serializers.ChoiceField(choices=['a', 'b', 'c', 'd', 'bhat'])
    q = serializers.IntegerField(min_value=2, default=2)
    ell = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    max_m = serializers.IntegerField(min_value=1, default=16)
    variant = serializers.ChoiceField(choices=['overcount', 'printed'], default='overcount')
    check = serializers.BooleanField(default=False)

    def validate(self, attrs):
        if attrs['kind'] != 'a' and attrs.get('ell') is None:
            raise serializers.ValidationError({'ell': 'required for this sequence'})
        return attrs


class RationalEnclosureSerializer(serializers.Serializer):
    """Endpoints as exact {num, den}, plus rounded text for reading."""
    lower = RationalField()
    upper = RationalField()
    width = serializers.SerializerMethodField()
    decimal = serializers.SerializerMethodField()
    params = serializers.DictField()

    def get_width(self, obj):
        return float(obj.width)

    def get_decimal(self, obj):
        return obj.decimal(self.context.get('digits', 10))


class SequenceTableSerializer(serializers.Serializer):
    kind = serializers.CharField()
    q = serializers.IntegerField()
    ell = serializers.IntegerField(allow_null=True)
    values = serializers.ListField(child=serializers.IntegerField())
