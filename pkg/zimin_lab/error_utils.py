"""
Utility functions for creating standardized result and error payloads.
"""
from django.utils.translation import gettext as _


def error_payload(message, code='ERROR', details=None, field=None):
    """
    Create a standardized error payload.

    Args:
        message: The error message (can be translatable string)
        code: Error code (default: 'ERROR')
        details: Optional additional details (dict)
        field: Optional field name for validation errors

    Returns:
        dict with the standard error envelope

    Example:
        return error_payload(
            message=_('Symbol is not in the alphabet'),
            code='PARSE_ERROR',
            details={'line': 3}
        )
    """
    error_data = {
        'status': 'error',
        'error': {
            'code': code,
            'message': str(message),
        }
    }

    if details:
        error_data['error']['details'] = details

    if field:
        error_data['error']['field'] = field

    return error_data


def validation_error_payload(errors):
    """
    Create a validation error payload from serializer errors.

    Args:
        errors: `serializer.errors`, a dict of field -> list of messages

    Returns:
        dict with validation error format; a single field error is promoted
        to the message and `field` keys
    """
    if len(errors) == 1 and 'non_field_errors' not in errors:
        field = next(iter(errors))
        message = errors[field]
        if isinstance(message, list):
            message = message[0]
        return error_payload(message=message, code='VALIDATION_ERROR', field=field)
    return error_payload(
        message=_('Validation failed. Please check your input.'),
        code='VALIDATION_ERROR',
        details={key: [str(m) for m in value] for key, value in errors.items()},
    )


def success_payload(data=None, message=None):
    """
    Create a standardized success payload.

    Args:
        data: Result data
        message: Optional success message

    Returns:
        dict with success format
    """
    payload = {'status': 'success'}

    if message:
        payload['message'] = str(message)

    if data is not None:
        payload['data'] = data

    return payload
