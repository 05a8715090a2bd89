"""
Optional run recording. A failed write never fails the run.
"""
import logging

from django.db import DatabaseError

from zimin_lab.conf import get_setting
from .models import ACTION_TYPES, RunLog

logger = logging.getLogger(__name__)

ACTION_NAMES = {code for code, _ in ACTION_TYPES}


def record_run(action_type, details, enabled=None):
    """
    Write a RunLog row when RECORD_RUNS is on; return it, or None.
    """
    if not get_setting('RECORD_RUNS', enabled):
        return None
    if action_type not in ACTION_NAMES:
        raise ValueError(f"unknown action type {action_type!r}")
    try:
        return RunLog.objects.create(action_type=action_type, details=details)
    except DatabaseError as exc:
        logger.warning(f"Run not recorded ({action_type}): {exc}")
        return None
