from rest_framework import serializers

from .models import SweepRun


class SweepRunSerializer(serializers.ModelSerializer):
    class Meta:
        model = SweepRun
        fields = ("id", "family", "spec", "points", "min_margin", "argmin", "violations", "passed", "created_at")


class RunQuerySerializer(serializers.Serializer):
    family = serializers.CharField(required=False, allow_blank=True)
    passed = serializers.BooleanField(required=False, allow_null=True, default=None)
