from rest_framework import serializers


class EncounterWitnessSerializer(serializers.Serializer):
    start = serializers.IntegerField()
    end = serializers.IntegerField()
    images = serializers.SerializerMethodField()

    def get_images(self, obj):
        return [img.to_string() for img in obj.images]


class ReductionTraceSerializer(serializers.Serializer):
    steps = serializers.SerializerMethodField()
    certifies_unavoidable = serializers.BooleanField(read_only=True)

    def get_steps(self, obj):
        return obj.to_list()


class UnavoidabilityQuerySerializer(serializers.Serializer):
    pattern = serializers.RegexField(r'^[a-z]+$')
    method = serializers.ChoiceField(choices=['zimin', 'bem', 'both'], default='both')
