"""Number parsing and the R rules for rendering doubles."""
import math
import re
from typing import List, Optional, Sequence, Tuple


_DECIMAL = re.compile(r'^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$')
_HEX = re.compile(r'^[+-]?0[xX][0-9a-fA-F]+$')


def parse_number_text(text: str) -> Tuple[bool, Optional[float]]:
    """Parse a numeric string the way ``as.numeric`` does.

    Returns ``(ok, value)``; ``value`` is None for a literal NA.
    """
    s = text.strip()
    if s == 'NA':
        return True, None
    body = s.lstrip('+-')
    sign = -1.0 if s.startswith('-') else 1.0
    if body in ('Inf', 'inf', 'Infinity', 'infinity'):
        return True, sign * math.inf
    if body == 'NaN':
        return True, math.nan
    if _HEX.match(s):
        return True, sign * float(int(body, 16))
    if _DECIMAL.match(s):
        return True, float(s)
    return False, None


def _sci_parts(x: float, digits: int) -> Tuple[int, int, int]:
    """Sign flag, decimal exponent and significant digit count of ``x``."""
    text = f'{abs(x):.{digits - 1}e}'
    mantissa, exponent = text.split('e')
    sig = mantissa.replace('.', '').rstrip('0')
    return (1 if x < 0 else 0), int(exponent), max(len(sig), 1)


def _nonfinite(x: Optional[float]) -> str:
    if x is None:
        return 'NA'
    if math.isnan(x):
        return 'NaN'
    return 'Inf' if x > 0 else '-Inf'


def real_format_spec(values: Sequence[Optional[float]], digits: int,
                     nsmall: int = 0) -> Tuple[bool, int]:
    """Decide between fixed and scientific notation for a whole vector.

    Returns ``(scientific, decimals)``: the number of digits after the point
    in fixed notation, or of mantissa digits in scientific notation.
    """
    finite = [x for x in values if x is not None and math.isfinite(x)]
    if not finite:
        return False, 0
    neg = 0
    rgt = mxsl = mxns = -10 ** 9
    mxl = -10 ** 9
    for x in finite:
        neg_i, kpower, nsig = _sci_parts(x, digits)
        left = kpower + 1
        sleft = neg_i + (1 if left <= 0 else left)
        right = nsig - left
        if neg_i:
            neg = 1
        rgt = max(rgt, right)
        mxl = max(mxl, left)
        mxsl = max(mxsl, sleft)
        mxns = max(mxns, nsig)
    if mxl < 0:
        mxsl = 1 + neg
    rgt = max(rgt, 0)
    fixed_width = mxsl + rgt + (1 if rgt else 0)
    mxe = max(_sci_parts(x, digits)[1] for x in finite)
    mne = min(_sci_parts(x, digits)[1] for x in finite)
    exp_digits = 2 if (mxe >= 100 or mne <= -99) else 1
    mant = mxns - 1
    sci_width = neg + (1 if mant > 0 else 0) + mant + 4 + exp_digits
    if fixed_width <= sci_width:
        return False, max(rgt, nsmall)
    return True, mant


def format_real(values: Sequence[Optional[float]], digits: int = 7, nsmall: int = 0) -> List[str]:
    """Render doubles with one common format, unpadded. None renders as NA."""
    scientific, decimals = real_format_spec(values, digits, nsmall)
    out = []
    for x in values:
        if x is None or not math.isfinite(x):
            out.append(_nonfinite(x))
        elif scientific:
            out.append(f'{x:.{decimals}e}')
        else:
            text = f'{x:.{decimals}f}'
            if text.startswith('-') and float(text) == 0:
                text = text[1:]
            out.append(text)
    return out


def format_double(x: Optional[float], digits: int = 7) -> str:
    return format_real([x], digits)[0]


def double_to_string(x: Optional[float]) -> Optional[str]:
    """The 15-significant-digit rendering used by ``as.character`` and deparse."""
    if x is None:
        return None
    return format_real([x], 15)[0]


def format_integers(values: Sequence[Optional[int]]) -> List[str]:
    return ['NA' if v is None else str(v) for v in values]
