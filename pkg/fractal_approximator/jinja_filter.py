""" Custom Jinja2 filters """
from jinja2 import StrictUndefined, UndefinedError

from fractal_approximator.utils import format_float


class MandatoryError(UndefinedError):
    def __init__(self, message):
        super().__init__(message)


def mandatory(value, error_message=u''):
    """Raise an 'UndefinedError' with an custom error massage, when value is undefined"""
    if type(value) is StrictUndefined:
        error_message = str(error_message) or "The variable '{0}' is undefined".format(value._undefined_name)
        raise MandatoryError(error_message)

    return value


def significant(value, digits=12):
    """Format a number with the given count of significant digits"""
    return format_float(value, digits)


def slug(value):
    """Reduce a string to characters that are safe in file names"""
    import re
    return re.sub(r'[^A-Za-z0-9.-]+', '_', str(value)).strip('_')


# register the filters
filters = {
    'mandatory': mandatory,
    'significant': significant,
    'slug': slug,
}
