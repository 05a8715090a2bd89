"""
Exception hierarchy for zimin_lab.
Every error carries a stable code, a process exit code and optional details,
and renders to the same envelope the CLI prints in json mode.
"""
from rest_framework.views import exception_handler
from rest_framework.response import Response
from rest_framework import status
from django.utils.translation import gettext_lazy as _
from rest_framework.exceptions import ValidationError as DRFValidationError
import logging

from .error_codes import (
    CliErrors, DeBruijnErrors, PatternErrors, SearchErrors, SeriesErrors, WordErrors,
)

logger = logging.getLogger(__name__)


class ZiminError(Exception):
    """
    Base class for zimin_lab errors.
    """
    default = {'code': 'ERROR', 'message': _('An error occurred.')}
    exit_code = 1

    def __init__(self, message=None, code=None, exit_code=None, details=None):
        self.message = message if message is not None else self.default['message']
        self.code = code or self.default['code']
        if exit_code is not None:
            self.exit_code = exit_code
        self.details = details
        super().__init__(str(self.message))

    def to_payload(self):
        """Convert exception to the error envelope"""
        payload = {
            'status': 'error',
            'error': {
                'code': self.code,
                'message': str(self.message),
            }
        }
        if self.details:
            payload['error']['details'] = self.details
        return payload


class EmptyWordError(ZiminError, ValueError):
    default = WordErrors.EMPTY_WORD


class IndexOutOfRange(ZiminError, IndexError):
    default = WordErrors.INDEX_OUT_OF_RANGE


class LetterOutOfRange(ZiminError, ValueError):
    default = WordErrors.LETTER_OUT_OF_RANGE


class ParseError(ZiminError, ValueError):
    default = WordErrors.PARSE_ERROR


class LengthError(ZiminError, ValueError):
    default = WordErrors.LENGTH_ERROR


class DisagreementError(ZiminError):
    default = PatternErrors.DISAGREEMENT


class DoubledInputError(ZiminError, ValueError):
    default = PatternErrors.DOUBLED_INPUT


class BudgetExhausted(ZiminError):
    """
    Raised when a node or enumeration budget runs out.
    `partial` holds whatever sound partial result the search had built.
    """
    default = SearchErrors.BUDGET_EXHAUSTED
    exit_code = 2

    def __init__(self, message=None, partial=None, **kwargs):
        super().__init__(message, **kwargs)
        self.partial = partial


class OracleMismatch(ZiminError):
    default = SeriesErrors.ORACLE_MISMATCH


class MonotonicityViolation(ZiminError, AssertionError):
    default = SeriesErrors.MONOTONICITY


class HypothesisViolation(ZiminError, ValueError):
    default = SeriesErrors.HYPOTHESIS


class RegionViolation(ZiminError, ValueError):
    default = SeriesErrors.REGION


class SingularSystem(ZiminError):
    default = DeBruijnErrors.SINGULAR_SYSTEM


class NoConvergence(ZiminError):
    default = DeBruijnErrors.NO_CONVERGENCE


class BadProbabilities(ZiminError, ValueError):
    default = DeBruijnErrors.BAD_PROBABILITIES


class ConfigurationError(ZiminError, KeyError):
    default = CliErrors.UNKNOWN_SETTING


class UsageError(ZiminError):
    default = CliErrors.USAGE


class UnreadableFile(ZiminError):
    default = CliErrors.UNREADABLE_FILE


def custom_exception_handler(exc, context):
    """
    Exception handler that returns the standard error envelope.

    {
        "status": "error",
        "error": {
            "code": "ERROR_CODE",
            "message": "Human-readable error message",
            "details": {...},  # Optional
            "field": "field_name"  # Optional: for validation errors
        }
    }
    """
    if isinstance(exc, ZiminError):
        code = status.HTTP_400_BAD_REQUEST if exc.exit_code == 1 else status.HTTP_422_UNPROCESSABLE_ENTITY
        return Response(exc.to_payload(), status=code)

    response = exception_handler(exc, context)

    if response is None:
        logger.error(f"Unhandled exception: {exc}", exc_info=True)
        return Response({
            'status': 'error',
            'error': {
                'code': 'INTERNAL_SERVER_ERROR',
                'message': str(_('An unexpected error occurred.')),
            }
        }, status=status.HTTP_500_INTERNAL_SERVER_ERROR)

    error_response = {'status': 'error', 'error': {}}
    if isinstance(exc, DRFValidationError) and isinstance(response.data, dict):
        error_response['error']['code'] = 'VALIDATION_ERROR'
        if len(response.data) == 1 and 'non_field_errors' not in response.data:
            field_name = list(response.data.keys())[0]
            message = response.data[field_name]
            if isinstance(message, list):
                message = message[0]
            error_response['error']['message'] = str(message)
            error_response['error']['field'] = field_name
        else:
            error_response['error']['message'] = str(_('Validation failed. Please check your input.'))
            error_response['error']['details'] = response.data
    else:
        error_code = getattr(exc, 'default_code', None) or 'ERROR'
        error_response['error']['code'] = error_code.upper()
        error_response['error']['message'] = str(response.data.get('detail', response.data))

    response.data = error_response
    return response
