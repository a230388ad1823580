from celery import group

from trails.tasks import recognize_graph
from trails.utils.commands import EXIT_NO, EXIT_OK, TrailCommand
from trails.validators import k_validator, read_text_file


class Command(TrailCommand):
    help = 'Recognize k-trails over many graph files through the Celery task queue.'

    def add_command_arguments(self, parser):
        parser.add_argument('graphs', nargs='+', help='Graph files.')
        parser.add_argument('-k', type=int, required=True)

    def run(self, graphs, k, **options):
        k = k_validator(k)
        job = group(recognize_graph.s(read_text_file(path), k) for path in graphs)
        results = job.apply_async().get()
        payload = [{'file': path, **result} for path, result in zip(graphs, results)]
        lines = [f"{row['file']}: {'yes' if row['answer'] else 'no'}" for row in payload]
        self.emit(payload, '\n'.join(lines))
        return EXIT_OK if all(row['answer'] for row in payload) else EXIT_NO
