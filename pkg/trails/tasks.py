from celery import shared_task

from trails.serializers import RecognitionResultSerializer
from trails.services.recognition import is_k_trail, min_trail_k
from trails.utils.graph_io import parse_graph
from trails.utils.multigraph import unweighted


@shared_task
def recognize_graph(text, k):
    """Recognition answer, multiplicities and witness for one graph file's contents."""
    g = unweighted(parse_graph(text))
    return dict(RecognitionResultSerializer(is_k_trail(g, k)).data)


@shared_task
def min_trail_k_of_graph(text):
    return min_trail_k(unweighted(parse_graph(text)))
