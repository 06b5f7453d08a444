from rest_framework import serializers

from .services.evaluate import MEASURES


class EvaluateSerializer(serializers.Serializer):
    state = serializers.JSONField()
    measure = serializers.ChoiceField(choices=MEASURES)
    index = serializers.FloatField()
    exponent = serializers.FloatField()
    pivot = serializers.IntegerField(required=False, default=0, min_value=0)


class ExampleRowSerializer(serializers.Serializer):
    label = serializers.CharField()
    value = serializers.FloatField()
    expected = serializers.FloatField()
    diff = serializers.FloatField()
    ok = serializers.BooleanField()
