import json
from pathlib import Path

from django.core.exceptions import ValidationError
from django.core.management.base import BaseCommand, CommandError
from rest_framework.exceptions import ValidationError as PayloadError

from trails.serializers import WitnessSerializer
from trails.services.preimage import verify_witness
from trails.utils.graph_io import render_dot
from trails.utils.multigraph import unweighted
from trails.validators import read_graph_file

EXIT_OK = 0
EXIT_NO = 1
EXIT_USAGE = 2
EXIT_SIZE_GUARD = 3
EXIT_INTERNAL = 4


class TrailCommand(BaseCommand):
    """
    Base class for the k-trail commands.

    Subclasses add their arguments in ``add_command_arguments`` and implement
    ``run``, returning an exit status. Library errors become ``CommandError``
    with the matching return code.
    """
    answer_no = 'answer: no'

    def add_arguments(self, parser):
        parser.add_argument('--json', action='store_true', dest='as_json',
                            help='Print machine-readable JSON.')
        parser.add_argument('-o', '--output', help='Write the result to this file instead of stdout.')
        self.add_command_arguments(parser)

    def add_command_arguments(self, parser):
        pass

    def run(self, **options):
        raise NotImplementedError

    def handle(self, *args, **options):
        """
        Runs the command and maps failures onto exit codes.

        Args:
            args: Positional arguments.
            options: Parsed command-line options.

        Raises:
            CommandError: For every non-zero exit status.
        """
        self.options = options
        try:
            status = self.run(**options)
        except ValidationError as exc:
            code = EXIT_SIZE_GUARD if getattr(exc, 'code', None) == 'size_guard' else EXIT_USAGE
            raise CommandError('; '.join(exc.messages), returncode=code)
        except PayloadError as exc:
            raise CommandError(f'invalid JSON input: {exc.detail}', returncode=EXIT_USAGE)
        except RuntimeError as exc:
            raise CommandError(f'internal failure: {exc}', returncode=EXIT_INTERNAL)
        if status:
            raise CommandError(self.answer_no, returncode=status)

    def load_graph(self, path, weighted=False):
        g = read_graph_file(path)
        return g if weighted else unweighted(g)

    def emit(self, payload=None, text=''):
        """Write ``payload`` as JSON under --json, otherwise ``text``."""
        if self.options.get('as_json') and payload is not None:
            text = json.dumps(payload, indent=2)
        if self.options.get('output'):
            Path(self.options['output']).write_text(text.rstrip('\n') + '\n')
        else:
            self.stdout.write(text.rstrip('\n'))

    def verified_witness(self, g, witness, k, edges=None):
        """
        Serialized witness, after re-checking it against the graph.

        Raises:
            CommandError: If the witness fails verification (exit code 4).
        """
        check = verify_witness(g, witness, k, edges)
        if not check:
            raise CommandError(f'refusing to print an unverified witness: {check.reason}',
                               returncode=EXIT_INTERNAL)
        return WitnessSerializer(witness).data

    def witness_dot(self, witness):
        labels = {w: f'{w}:{image}' for w, image in enumerate(witness.phi)}
        return render_dot(witness.h, name='H', labels=labels)
