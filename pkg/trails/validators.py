import json
from pathlib import Path

from django.core.exceptions import ValidationError

from trails.utils.graph_io import parse_graph


def read_text_file(path):
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise ValidationError('Cannot read %(path)s: %(error)s', code='invalid',
                              params={'path': path, 'error': exc.strerror})
    try:
        return data.decode('utf-8')
    except UnicodeDecodeError as exc:
        raise ValidationError('%(path)s line %(line)s: not UTF-8 text', code='parse',
                              params={'path': path, 'line': data.count(b'\n', 0, exc.start) + 1})


def read_graph_file(path):
    return parse_graph(read_text_file(path))


def read_json_file(path):
    try:
        return json.loads(read_text_file(path))
    except json.JSONDecodeError as exc:
        raise ValidationError('%(path)s is not JSON: %(error)s', code='parse',
                              params={'path': path, 'error': exc.msg})


def k_validator(k, least=1):
    if k is None or k < least:
        raise ValidationError('-k must be at least %(least)s', code='invalid', params={'least': least})
    return k


def split_vector_validator(text, n):
    try:
        mu = tuple(int(part) for part in text.split(','))
    except ValueError:
        raise ValidationError('--mu must be comma-separated integers', code='invalid')
    if len(mu) != n or any(x < 0 for x in mu):
        raise ValidationError('--mu needs %(n)s nonnegative entries', code='invalid', params={'n': n})
    return mu
