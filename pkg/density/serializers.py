from rest_framework import serializers

from words.serializers import RationalField


class DensityParamsSerializer(serializers.Serializer):
    """Either an explicit word or (q, n) for expectation and sampling."""
    pattern = serializers.CharField()
    word = serializers.CharField(required=False, allow_null=True, default=None)
    q = serializers.IntegerField(min_value=1, default=2)
    n = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    samples = serializers.IntegerField(min_value=0, default=0)
    seed = serializers.IntegerField(required=False, allow_null=True, default=None)
    surjective = serializers.BooleanField(default=False)

    def validate(self, attrs):
        if attrs.get('word') is None and attrs.get('n') is None:
            raise serializers.ValidationError('give a word or a length n')
        return attrs


class ScatterParamsSerializer(serializers.Serializer):
    q = serializers.IntegerField(min_value=2, default=2)
    n = serializers.IntegerField(min_value=1)
    budget = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)


class DensityValueSerializer(serializers.Serializer):
    numerator = serializers.IntegerField()
    denominator = serializers.IntegerField()
    value = serializers.SerializerMethodField()

    def get_value(self, obj):
        return RationalField().to_representation(obj.as_rational)


class MonteCarloSerializer(serializers.Serializer):
    mean = serializers.FloatField()
    standard_error = serializers.FloatField()
    samples = serializers.IntegerField()
    seed = serializers.IntegerField()


class ScatterSerializer(serializers.Serializer):
    q = serializers.IntegerField()
    n = serializers.IntegerField()
    point_count = serializers.SerializerMethodField()
    min_x = RationalField()
    max_x = RationalField()
    expectation = serializers.SerializerMethodField()

    def get_point_count(self, obj):
        return len(obj.points)

    def get_expectation(self, obj):
        field = RationalField()
        return [field.to_representation(v) for v in obj.expectation]


class LiminfReportSerializer(serializers.Serializer):
    """TinyValues render as {exact, log10, scientific}; exact is null past the digit limit."""
    n = serializers.IntegerField()
    q = serializers.IntegerField()
    inputs = serializers.DictField()
    forms = serializers.SerializerMethodField()

    def get_forms(self, obj):
        field = RationalField()
        rendered = {}
        for name, value in obj.forms.items():
            rendered[name] = {
                'exact': field.to_representation(value.exact) if value.exact is not None else None,
                'log10': value.log10_value,
                'scientific': value.scientific(),
            }
        return rendered
