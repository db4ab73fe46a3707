"""Command-line entry point: ``python manage.py solve|range|analyze|generate``."""
import os
import sys


def main(argv=None):
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'config.settings')
    try:
        from django.core.management import execute_from_command_line
    except ImportError as exc:
        raise ImportError(
            "Couldn't import Django. Install the packages from requirements.txt "
            "and run the commands from the src/ directory."
        ) from exc
    execute_from_command_line(argv or sys.argv)


if __name__ == '__main__':
    main()
