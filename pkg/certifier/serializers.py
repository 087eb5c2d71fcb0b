"""
Sérialiseurs du certificat et de l'entrée de l'API de certification.
"""
from django.core.exceptions import ValidationError as DjangoValidationError
from rest_framework import serializers

from graphs.structures import BipartiteGraph
from spectral.serializers import Graph6InputSerializer


class CertifyInputSerializer(Graph6InputSerializer):
    bipartite = serializers.BooleanField(default=False)
    budget = serializers.IntegerField(required=False, min_value=1)

    def validate(self, attrs):
        attrs = super().validate(attrs)
        if attrs['bipartite']:
            try:
                attrs['graph'] = BipartiteGraph.from_halves(attrs['graph'])
            except DjangoValidationError as exc:
                raise serializers.ValidationError({'bipartite': exc.messages})
        return attrs


class WitnessSerializer(serializers.Serializer):
    kind = serializers.CharField()
    cycle = serializers.ListField(child=serializers.IntegerField())
    cut = serializers.ListField(child=serializers.IntegerField())
    components = serializers.IntegerField()


class CertificateSerializer(serializers.Serializer):
    verdict = serializers.CharField()
    rule = serializers.CharField()
    family = serializers.SerializerMethodField()
    details = serializers.DictField()
    witness = WitnessSerializer(allow_null=True)

    def get_family(self, obj):
        if obj.family is None:
            return None
        return {'family': str(obj.family.family), 'n': obj.family.n, 'k': obj.family.k}
