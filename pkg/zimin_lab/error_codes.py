"""
Error codes and messages for zimin_lab.
All error messages support internationalization.
"""
from django.utils.translation import gettext_lazy as _


# Word construction and parsing
class WordErrors:
    EMPTY_WORD = {
        'code': 'EMPTY_WORD',
        'message': _('This operation requires a nonempty word.')
    }

    INDEX_OUT_OF_RANGE = {
        'code': 'INDEX_OUT_OF_RANGE',
        'message': _('Factor indices must satisfy 0 <= i < j <= |W|.')
    }

    LETTER_OUT_OF_RANGE = {
        'code': 'LETTER_OUT_OF_RANGE',
        'message': _('Letter code is not below the alphabet size.')
    }

    PARSE_ERROR = {
        'code': 'PARSE_ERROR',
        'message': _('Symbol is not in the alphabet.')
    }

    LENGTH_ERROR = {
        'code': 'LENGTH_ERROR',
        'message': _('The pattern is longer than the word.')
    }


# Pattern engine
class PatternErrors:
    DISAGREEMENT = {
        'code': 'UNAVOIDABILITY_DISAGREEMENT',
        'message': _('Zimin and BEM deciders disagree on this pattern.')
    }

    DOUBLED_INPUT = {
        'code': 'DOUBLED_INPUT',
        'message': _('The pattern is doubled; its asymptotic instance probability is 0.')
    }


# Avoidance search and enumeration budgets
class SearchErrors:
    BUDGET_EXHAUSTED = {
        'code': 'BUDGET_EXHAUSTED',
        'message': _('Search budget exhausted; partial results only.')
    }

    ENUMERATION_BUDGET = {
        'code': 'ENUMERATION_BUDGET',
        'message': _('Enumeration would exceed the configured budget.')
    }

    CAP_TOO_SMALL = {
        'code': 'CAP_TOO_SMALL',
        'message': _('Length cap is below f(n,q); the list may be incomplete.')
    }


# Series, recursions and enclosures
class SeriesErrors:
    ORACLE_MISMATCH = {
        'code': 'ORACLE_MISMATCH',
        'message': _('Recursion disagrees with the brute-force oracle.')
    }

    MONOTONICITY = {
        'code': 'MONOTONICITY_VIOLATION',
        'message': _('Alternating-series terms are not decreasing in magnitude.')
    }

    HYPOTHESIS = {
        'code': 'HYPOTHESIS_VIOLATION',
        'message': _('Exactly one letter must occur once.')
    }

    REGION = {
        'code': 'REGION_VIOLATION',
        'message': _('Density pair lies outside the attainable triangle.')
    }


# de Bruijn stationary solver
class DeBruijnErrors:
    SINGULAR_SYSTEM = {
        'code': 'SINGULAR_SYSTEM',
        'message': _('Balance equations are singular on the recurrent class.')
    }

    NO_CONVERGENCE = {
        'code': 'NO_CONVERGENCE',
        'message': _('Stationary distribution did not converge.')
    }

    BAD_PROBABILITIES = {
        'code': 'BAD_PROBABILITIES',
        'message': _('Probability tuple must have one entry in [0,1] per node.')
    }


# Command line and configuration
class CliErrors:
    USAGE = {
        'code': 'USAGE_ERROR',
        'message': _('Invalid arguments.')
    }

    UNKNOWN_SETTING = {
        'code': 'UNKNOWN_SETTING',
        'message': _('Unknown zimin_lab setting.')
    }

    UNREADABLE_FILE = {
        'code': 'UNREADABLE_FILE',
        'message': _('Word file could not be read.')
    }
