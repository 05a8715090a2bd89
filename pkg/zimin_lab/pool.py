"""
Fan-out of Celery signatures sized by ZIMIN['THREADS'].

With a broker the worker's own concurrency applies. In eager mode the
signatures run in this process, on a thread pool of THREADS workers when
THREADS > 1. Results always come back in signature order.
"""
from concurrent.futures import ThreadPoolExecutor
import logging

from celery import group

from .celery import app
from .conf import get_setting

logger = logging.getLogger(__name__)


def _apply(signature):
    return signature.apply().get()


def run_group(signatures, threads=None):
    """
    Run every signature and return their results in order.

    Example:
        results = run_group([search_subtree.s(...) for prefix in frontier])
    """
    signatures = list(signatures)
    threads = get_setting('THREADS', threads)
    if threads < 1:
        raise ValueError('THREADS must be at least 1')
    if not app.conf.task_always_eager or threads == 1 or len(signatures) < 2:
        return group(signatures).apply_async().get()
    workers = min(threads, len(signatures))
    logger.debug(f"Running {len(signatures)} tasks on {workers} threads")
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(_apply, signatures))
