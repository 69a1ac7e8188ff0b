"""Complex literal parsing and canonical formatting shared by the CLI and
the report writers: canonical form is RE+IMi with 6 significant digits."""

from __future__ import annotations

import re

_CARTESIAN = re.compile(
    r"^\s*([+-]?[\d.]+(?:[eE][+-]?\d+)?)\s*,\s*([+-]?[\d.]+(?:[eE][+-]?\d+)?)\s*$"
)
_ALGEBRAIC = re.compile(
    r"^\s*([+-]?[\d.]+(?:[eE][+-]?\d+)?)\s*"
    r"(?:([+-])\s*([\d.]+(?:[eE][+-]?\d+)?)?\s*[ij])?\s*$"
)
_PURE_IMAG = re.compile(r"^\s*([+-]?)([\d.]+(?:[eE][+-]?\d+)?)?\s*[ij]\s*$")


def parse_complex(text: str) -> complex:
    """Accepts 'RE,IM' and 'RE+IMi' (also bare 'RE', 'IMi')."""
    m = _CARTESIAN.match(text)
    if m:
        return complex(float(m.group(1)), float(m.group(2)))
    m = _PURE_IMAG.match(text)
    if m:
        mag = float(m.group(2)) if m.group(2) else 1.0
        return complex(0.0, -mag if m.group(1) == "-" else mag)
    m = _ALGEBRAIC.match(text)
    if m:
        re_part = float(m.group(1))
        if m.group(2) is None:
            return complex(re_part, 0.0)
        mag = float(m.group(3)) if m.group(3) else 1.0
        im = -mag if m.group(2) == "-" else mag
        return complex(re_part, im)
    raise ValueError(f"cannot parse complex literal {text!r}")


def format_complex(z: complex, digits: int = 6) -> str:
    z = complex(z)
    re_part = 0.0 if z.real == 0 else z.real  # normalize -0.0
    im_part = 0.0 if z.imag == 0 else z.imag
    re_s = f"{re_part:.{digits}g}"
    im_s = f"{abs(im_part):.{digits}g}"
    sign = "-" if im_part < 0 else "+"
    return f"{re_s}{sign}{im_s}i"
