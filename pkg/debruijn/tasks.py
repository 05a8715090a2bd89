from celery import shared_task

from .optimize import run_single_restart


@shared_task
def run_restart(k, q, max_len, minimal, entropy, spawn_key, tolerance, start=None):
    """
    A Celery task that runs one optimizer restart on its own RNG stream.
    """
    return run_single_restart(k, q, max_len, minimal, entropy, spawn_key, tolerance, start)
