"""
Unit tests for settings access, the error hierarchy and the error envelope.
"""
import pytest
from rest_framework import status
from rest_framework.exceptions import ValidationError

from zimin_lab.conf import get_setting
from zimin_lab.error_utils import error_payload, success_payload, validation_error_payload
from zimin_lab.exceptions import (
    BudgetExhausted, ConfigurationError, ParseError, ZiminError, custom_exception_handler,
)


@pytest.mark.unit
class TestSettings:
    """Test the ZIMIN settings block."""

    def test_override_wins(self):
        assert get_setting('SEARCH_NODE_BUDGET', 5) == 5

    def test_defaults(self):
        assert get_setting('DEFAULT_SEED') == 7
        assert get_setting('ENCLOSURE_BITS') == 256
        assert get_setting('RESTARTS') == 64

    def test_settings_fixture_changes_budget(self, small_budgets):
        assert get_setting('ENUMERATION_BUDGET') == 2 ** 16

    def test_unknown_setting(self):
        with pytest.raises(ConfigurationError) as exc_info:
            get_setting('NO_SUCH_SETTING')
        assert exc_info.value.code == 'UNKNOWN_SETTING'
        assert isinstance(exc_info.value, KeyError)


@pytest.mark.unit
class TestErrors:
    """Test error codes, exit codes and payloads."""

    def test_default_message_and_code(self):
        error = ParseError(details={'symbol': '2'})
        assert error.code == 'PARSE_ERROR'
        assert error.exit_code == 1
        assert error.to_payload() == {
            'status': 'error',
            'error': {'code': 'PARSE_ERROR', 'message': str(error.message), 'details': {'symbol': '2'}},
        }

    def test_budget_exhausted_carries_partial(self):
        error = BudgetExhausted('stopped', partial=[1, 2])
        assert error.exit_code == 2
        assert error.partial == [1, 2]
        assert error.to_payload()['error']['code'] == 'BUDGET_EXHAUSTED'

    def test_custom_exit_code(self):
        assert ZiminError('x', exit_code=3).exit_code == 3

    def test_payload_helpers(self):
        assert success_payload({'f': 5}) == {'status': 'success', 'data': {'f': 5}}
        assert error_payload('bad', field='n')['error'] == {'code': 'ERROR', 'message': 'bad', 'field': 'n'}
        payload = validation_error_payload({'n': ['Ensure this value is greater than or equal to 1.']})
        assert payload['error']['field'] == 'n'
        assert payload['error']['code'] == 'VALIDATION_ERROR'


@pytest.mark.unit
class TestExceptionHandler:
    """Test the DRF exception handler."""

    def test_zimin_error(self):
        response = custom_exception_handler(ParseError(), {})
        assert response.status_code == status.HTTP_400_BAD_REQUEST
        assert response.data['error']['code'] == 'PARSE_ERROR'

    def test_budget_error_is_unprocessable(self):
        response = custom_exception_handler(BudgetExhausted(), {})
        assert response.status_code == status.HTTP_422_UNPROCESSABLE_ENTITY

    def test_validation_error(self):
        response = custom_exception_handler(ValidationError({'q': ['too small']}), {})
        assert response.data['error'] == {'code': 'VALIDATION_ERROR', 'message': 'too small', 'field': 'q'}

    def test_unhandled_error(self):
        response = custom_exception_handler(RuntimeError('boom'), {})
        assert response.status_code == status.HTTP_500_INTERNAL_SERVER_ERROR
