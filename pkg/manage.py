#!/usr/bin/env python
"""Django's command-line utility; also the k-trail toolkit's executable."""
import os
import sys


def main(argv=None):
    """Run a management command and return its exit code."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'KTrails.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Are you sure it's installed and "
            "available on your PYTHONPATH environment variable? Did you "
            "forget to activate a virtual environment?"
        ) from exc
    try:
        execute_from_command_line(sys.argv if argv is None else argv)
    except SystemExit as exc:
        if exc.code is None or isinstance(exc.code, int):
            return exc.code or 0
        return 1
    return 0


if __name__ == '__main__':
    sys.exit(main())
