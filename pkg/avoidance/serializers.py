from rest_framework import serializers

from words.serializers import rational_payload


class SearchParamsSerializer(serializers.Serializer):
    """Inputs shared by the f, avoiders and minimal subcommands."""
    n = serializers.IntegerField(min_value=1)
    q = serializers.IntegerField(min_value=1, default=2)
    budget = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    max_len = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)


class LongAvoiderParamsSerializer(serializers.Serializer):
    n = serializers.IntegerField(min_value=2)
    q = serializers.IntegerField(min_value=2, default=2)
    target = serializers.IntegerField(min_value=1)
    strategy = serializers.ChoiceField(choices=['greedy', 'restart-backtrack'], default='restart-backtrack')
    seed = serializers.IntegerField(required=False, allow_null=True, default=None)
    budget = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)


class BoundsParamsSerializer(serializers.Serializer):
    n = serializers.IntegerField(min_value=1)
    q = serializers.IntegerField(min_value=2, default=2)
    f_value = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    m_value = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)


class AvoidanceResultSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    q = serializers.IntegerField()
    f_value = serializers.IntegerField(allow_null=True)
    f_lower_bound = serializers.IntegerField()
    nodes_explored = serializers.IntegerField()
    budget_exhausted = serializers.BooleanField()
    symmetry_reduced = serializers.BooleanField()
    max_avoiders = serializers.SerializerMethodField()

    def get_max_avoiders(self, obj):
        if obj.max_avoiders is None:
            return None
        return [w.to_string() for w in obj.max_avoiders]


class MinimalInstancesSerializer(serializers.Serializer):
    n = serializers.IntegerField()
    q = serializers.IntegerField()
    count = serializers.IntegerField()
    max_len = serializers.IntegerField(allow_null=True)
    complete = serializers.BooleanField()
    words = serializers.SerializerMethodField()

    def get_words(self, obj):
        return [w.to_string() for w in obj.words]


class BoundReportSerializer(serializers.Serializer):
    """
    Tetrations render as {base, height, symbol, value}; value is a decimal
    string or null past the digit cap.
    """
    n = serializers.IntegerField()
    q = serializers.IntegerField()
    tetration_upper = serializers.SerializerMethodField()
    tao_upper = serializers.SerializerMethodField()
    doubling_upper = serializers.SerializerMethodField()
    first_moment_lower = serializers.FloatField()
    tao_product_lower = serializers.FloatField()
    rs_chain_upper = serializers.IntegerField(allow_null=True)
    rs_asymptotic_f3 = serializers.FloatField(allow_null=True)
    previous_f = serializers.IntegerField(allow_null=True)
    previous_m = serializers.IntegerField(allow_null=True)
    provenance = serializers.DictField(child=serializers.CharField())

    def get_tetration_upper(self, obj):
        return obj.tetration_upper.to_dict()

    def get_tao_upper(self, obj):
        return obj.tao_upper.to_dict()

    def get_doubling_upper(self, obj):
        return None if obj.doubling_upper is None else str(obj.doubling_upper)


def instance_count_payload(bounds):
    return {key: rational_payload(value) for key, value in bounds.items()}
