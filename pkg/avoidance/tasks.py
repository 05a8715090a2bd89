from celery import shared_task

from .search import AvoiderTreeSearch


@shared_task
def search_subtree(prefix, n, q, collect, budget, max_depth=None):
    """
    A Celery task that exhausts the avoider tree below one prefix.
    The prefix itself was recorded by the caller and is not recorded again.
    """
    searcher = AvoiderTreeSearch(n, q, collect=collect, budget=budget, max_depth=max_depth)
    return searcher.explore(tuple(prefix), record_root=False).to_dict()
