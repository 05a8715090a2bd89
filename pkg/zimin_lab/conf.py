"""
Access to the ZIMIN settings block with per-call overrides.
"""
from django.conf import settings

from .exceptions import ConfigurationError


def get_setting(name, override=None):
    """
    Return `override` when it is not None, else settings.ZIMIN[name].

    Example:
        budget = get_setting('SEARCH_NODE_BUDGET', budget)
    """
    if override is not None:
        return override
    try:
        return settings.ZIMIN[name]
    except KeyError:
        raise ConfigurationError(details={'setting': name}) from None
