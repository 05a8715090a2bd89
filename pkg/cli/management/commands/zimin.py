"""
Management command wrapping the zimin command line.
Usage: python manage.py zimin f --n 3 --q 2
"""
import argparse

from django.core.management.base import BaseCommand, CommandError

from cli.runner import run


class Command(BaseCommand):
    help = 'Zimin word avoidance, densities and instance probabilities (see `zimin --help`)'

    def add_arguments(self, parser):
        parser.add_argument('argv', nargs=argparse.REMAINDER, help='subcommand and its options')

    def handle(self, *args, **options):
        exit_code = run(options['argv'], stdout=self.stdout, stderr=self.stderr)
        if exit_code:
            raise CommandError(f'zimin exited with status {exit_code}', returncode=exit_code)
