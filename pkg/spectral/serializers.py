"""
Sérialiseurs pour les résultats spectraux.
"""
from django.core.exceptions import ValidationError as DjangoValidationError
from rest_framework import serializers

from graphs.graph6 import decode_graph6


class Graph6InputSerializer(serializers.Serializer):
    """Entrée commune : un enregistrement graph6."""

    graph6 = serializers.CharField(trim_whitespace=True)

    def validate(self, attrs):
        try:
            attrs['graph'] = decode_graph6(attrs['graph6'])
        except DjangoValidationError as exc:
            raise serializers.ValidationError({'graph6': exc.messages})
        return attrs


class SpectralResultSerializer(serializers.Serializer):
    """Sérialiseur pour SpectralResult."""

    lambda1 = serializers.FloatField()
    lambda2 = serializers.FloatField(allow_null=True)
    perron = serializers.ListField(child=serializers.FloatField())
    residual = serializers.FloatField()
    method = serializers.CharField()
