from fractions import Fraction

from rest_framework import serializers

from trails.services.preimage import PreimageWitness
from trails.utils.multigraph import MultiGraph


class FractionField(serializers.Field):
    """Exact rationals travel as strings such as ``"7/2"``."""

    def to_representation(self, value):
        return str(Fraction(value))

    def to_internal_value(self, data):
        try:
            return Fraction(str(data))
        except (ValueError, ZeroDivisionError):
            raise serializers.ValidationError('Not a rational number')


class WitnessNodeSerializer(serializers.Serializer):
    id = serializers.IntegerField(min_value=0)
    image = serializers.IntegerField(min_value=0)


class WitnessEdgeSerializer(serializers.Serializer):
    id = serializers.IntegerField(min_value=0)
    u = serializers.IntegerField(min_value=0)
    v = serializers.IntegerField(min_value=0)
    image_edge = serializers.IntegerField(min_value=0)


class WitnessSerializer(serializers.Serializer):
    nodes = WitnessNodeSerializer(many=True)
    edges = WitnessEdgeSerializer(many=True)

    def validate(self, attrs):
        node_ids = sorted(node['id'] for node in attrs['nodes'])
        if node_ids != list(range(len(node_ids))):
            raise serializers.ValidationError('Node ids must be 0..n-1')
        edge_ids = sorted(edge['id'] for edge in attrs['edges'])
        if edge_ids != list(range(len(edge_ids))):
            raise serializers.ValidationError('Edge ids must be 0..m-1')
        for edge in attrs['edges']:
            if edge['u'] >= len(node_ids) or edge['v'] >= len(node_ids):
                raise serializers.ValidationError(f"Edge {edge['id']} names a missing node")
        return attrs

    def to_representation(self, instance: PreimageWitness):
        return {
            'nodes': [{'id': w, 'image': image} for w, image in enumerate(instance.phi)],
            'edges': [{'id': f, 'u': a, 'v': b, 'image_edge': instance.edge_map[f]}
                      for f, (a, b) in enumerate(instance.h.edges)],
        }

    def to_witness(self) -> PreimageWitness:
        nodes = sorted(self.validated_data['nodes'], key=lambda node: node['id'])
        edges = sorted(self.validated_data['edges'], key=lambda edge: edge['id'])
        h = MultiGraph(len(nodes), tuple((edge['u'], edge['v']) for edge in edges))
        return PreimageWitness(h, tuple(node['image'] for node in nodes),
                               tuple(edge['image_edge'] for edge in edges))


class SubgraphSerializer(serializers.Serializer):
    """Edge ids of a spanning subgraph; pass ``edge_count`` in the context to bound them."""

    edges = serializers.ListField(child=serializers.IntegerField(min_value=0), allow_empty=False)

    def validate_edges(self, value):
        if len(set(value)) != len(value):
            raise serializers.ValidationError('Edge ids must be distinct')
        m = self.context.get('edge_count')
        if m is not None and any(e >= m for e in value):
            raise serializers.ValidationError(f'Edge ids must be below {m}')
        return value


class RecognitionResultSerializer(serializers.Serializer):
    k = serializers.IntegerField()
    answer = serializers.BooleanField()
    multiplicities = serializers.ListField(child=serializers.IntegerField())
    capacities = serializers.ListField(child=serializers.IntegerField())
    cut = serializers.SerializerMethodField()
    witness = serializers.SerializerMethodField()

    def get_cut(self, obj):
        return sorted(obj.cut)

    def get_witness(self, obj):
        return WitnessSerializer(obj.witness).data if obj.witness is not None else None
