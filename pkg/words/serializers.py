from fractions import Fraction

from rest_framework import serializers

from zimin_lab.exceptions import ParseError
from .core import DEFAULT_ALPHABET, Word


class WordField(serializers.Field):
    """Word <-> text over an alphabet string (code = symbol position)."""

    def __init__(self, alphabet=DEFAULT_ALPHABET, **kwargs):
        self.alphabet = alphabet
        super().__init__(**kwargs)

    def to_internal_value(self, data):
        if isinstance(data, Word):
            return data
        try:
            return Word.from_string(str(data).strip(), self.alphabet)
        except ParseError as exc:
            raise serializers.ValidationError(
                f"symbol {exc.details['symbol']!r} at position {exc.details['position']} is not in the alphabet"
            )

    def to_representation(self, value):
        return value.to_string(self.alphabet)


class RationalField(serializers.Field):
    """
    Exact rationals as {num, den, float}. Input accepts 'a/b', integers,
    decimals and, when allow_blank_marker is set, '-' for an unconstrained entry.
    """

    def __init__(self, allow_blank_marker=False, **kwargs):
        self.allow_blank_marker = allow_blank_marker
        super().__init__(**kwargs)

    def to_internal_value(self, data):
        if isinstance(data, Fraction):
            return data
        if isinstance(data, dict):
            return Fraction(int(data['num']), int(data['den']))
        text = str(data).strip()
        if self.allow_blank_marker and text in {'-', '--', '–'}:
            return None
        try:
            return Fraction(text)
        except (ValueError, ZeroDivisionError):
            raise serializers.ValidationError(f"{text!r} is not a rational number")

    def to_representation(self, value):
        if value is None:
            return None
        value = Fraction(value)
        return {'num': value.numerator, 'den': value.denominator, 'float': float(value)}


def rational_payload(value):
    """Shortcut for rendering a bare Fraction outside a serializer."""
    return RationalField().to_representation(value)

