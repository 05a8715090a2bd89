from celery import shared_task

from .exact import sample_chunk


@shared_task
def sample_density_chunk(pattern_text, q, n, count, entropy, spawn_key):
    """
    A Celery task that measures δ(V, W) on one chunk of random words.
    """
    return sample_chunk(pattern_text, q, n, count, entropy, spawn_key)
