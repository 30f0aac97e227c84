import logging
import math

from concswap.core import InvalidParameterError
from concswap.core.states import SchmidtSpectrum

log = logging.getLogger(__name__)


def format_value(value):
    """17 significant digits, enough to round-trip a double."""
    if isinstance(value, complex):
        return f"{format_value(value.real)}{'+' if value.imag >= 0 else '-'}{format_value(abs(value.imag))}i"
    value = float(value)
    if math.isnan(value):
        return 'nan'
    return '%.17g' % value


def parse_float(string, name="value"):
    if isinstance(string, (int, float)):
        return float(string)
    try:
        value = float(string)
    except (TypeError, ValueError):
        raise InvalidParameterError(f"{name}: '{string}' is not a decimal number")
    if not math.isfinite(value):
        raise InvalidParameterError(f"{name}: '{string}' is not finite")
    return value


def parse_complex(string, name="value"):
    """'re', 're+imi', 're-imi' or 'imi'."""
    if isinstance(string, (int, float, complex)):
        return complex(string)
    text = str(string).strip().replace(' ', '')
    if not text or 'j' in text.lower():
        raise InvalidParameterError(f"{name}: '{string}' is not of the form re[+imi]")
    try:
        value = complex(text.replace('i', 'j'))
    except ValueError:
        raise InvalidParameterError(f"{name}: '{string}' is not of the form re[+imi]")
    if not (math.isfinite(value.real) and math.isfinite(value.imag)):
        raise InvalidParameterError(f"{name}: '{string}' is not finite")
    return value


def parse_spectrum(string, name="spectrum"):
    """Comma-separated Schmidt coefficients, e.g. '0.4,0.3,0.2,0.1'."""
    values = [parse_float(part.strip(), name) for part in str(string).split(",")]
    return SchmidtSpectrum(values)


def parse_specs(string, count=None, minimum=None):
    """Qubit pairs as 'a:b,c:d,...'; each pair is one SchmidtSpectrum."""
    spectra = []
    for item in str(string).split(','):
        pair = item.strip().split(':')
        if len(pair) != 2:
            raise InvalidParameterError(f"specs: '{item}' is not of the form a:b")
        spectra.append(SchmidtSpectrum([parse_float(value, "specs") for value in pair]))
    if count is not None and len(spectra) != count:
        raise InvalidParameterError(f"specs: expected {count} pairs, got {len(spectra)}")
    if minimum is not None and len(spectra) < minimum:
        raise InvalidParameterError(f"specs: expected at least {minimum} pairs, got {len(spectra)}")
    return spectra
