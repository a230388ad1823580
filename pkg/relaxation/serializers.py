from rest_framework import serializers

from trails.serializers import FractionField, WitnessSerializer


class IterationRecordSerializer(serializers.Serializer):
    iteration = serializers.IntegerField()
    lp_value = FractionField()
    live_edges = serializers.IntegerField()
    live_vertices = serializers.IntegerField()
    action = serializers.CharField()
    target = serializers.IntegerField(allow_null=True)
    condition = serializers.CharField(allow_blank=True)


class TrailApproximationSerializer(serializers.Serializer):
    k = serializers.IntegerField()
    bound = serializers.IntegerField()
    edges = serializers.SerializerMethodField()
    weight = serializers.IntegerField()
    lp_value = FractionField()
    final_value = FractionField()
    iterations = serializers.IntegerField()
    witness = serializers.SerializerMethodField()

    def get_edges(self, obj):
        return sorted(obj.edges)

    def get_witness(self, obj):
        return WitnessSerializer(obj.witness).data


class NoKTrailCertificateSerializer(serializers.Serializer):
    k = serializers.IntegerField()
    infeasibility = FractionField()
    farkas = serializers.SerializerMethodField()

    def get_farkas(self, obj):
        return {name: str(y) for name, y in obj.farkas.items() if y}
