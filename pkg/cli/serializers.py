from rest_framework import serializers

from words.core import DEFAULT_ALPHABET
from .formats import FORMATS


class RunConfigSerializer(serializers.Serializer):
    """Options shared by every subcommand."""
    format = serializers.ChoiceField(choices=FORMATS, default='text')
    out = serializers.CharField(required=False, allow_null=True, default=None)
    alphabet = serializers.CharField(min_length=2, default=DEFAULT_ALPHABET)
    budget = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    seed = serializers.IntegerField(min_value=0, required=False, allow_null=True, default=None)
    threads = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
    digits = serializers.IntegerField(min_value=1, max_value=60, default=10)
    progress = serializers.BooleanField(default=False)

    def validate_alphabet(self, value):
        if len(set(value)) != len(value):
            raise serializers.ValidationError('alphabet symbols must be distinct')
        return value


class VerifyParamsSerializer(serializers.Serializer):
    path = serializers.CharField()
    n = serializers.IntegerField(min_value=1)
    method = serializers.ChoiceField(choices=['auto', 'window', 'kernel'], default='auto')


class TablesParamsSerializer(serializers.Serializer):
    reproduce = serializers.ChoiceField(choices=['fn2', 'Z2Z3', 'IZ2', 'IZ3', 'appendMD', 'TREES'])
    max_n = serializers.IntegerField(min_value=1, required=False, allow_null=True, default=None)
