"""Exact inversion and connection coefficients for basic hypergeometric polynomial families."""

from fractions import Fraction
import json as _json

from ._qconn import (
    QconnError,
    families,
    format_scalar,
    ledger,
    suite_names,
)
from . import _qconn

__all__ = [
    "QconnError",
    "families",
    "format_scalar",
    "parse_scalar",
    "invert",
    "connect",
    "verify",
    "ledger",
    "suite_names",
    "run",
]


def _fraction_or_complex(re, im):
    re, im = Fraction(re), Fraction(im)
    return re if im == 0 else (re, im)


def parse_scalar(text):
    """Parse a literal such as "2/5" or "-1/3+2/7i".

    Real values come back as Fraction, Gaussian values as a (re, im) pair of Fractions.
    """
    return _fraction_or_complex(*_qconn.parse_scalar(str(text)))


def _params(params):
    return {k: str(v) for k, v in (params or {}).items()}


def _values(rows):
    return [parse_scalar(value) for _, value, _ in rows]


def invert(family, params, q, n, *, oracle=False, max_degree=16):
    """Coefficients I_m(n), m = 0..n, of y^n in the family's polynomials."""
    return _values(_qconn.invert(family, _params(params), str(q), n, oracle, max_degree))


def connect(src, src_params, tgt, tgt_params, q, n, *, oracle=False, max_degree=16):
    """Coefficients C_m(n) of the source polynomial P_n in the target polynomials Q_m."""
    rows = _qconn.connect(src, _params(src_params), tgt, _params(tgt_params), str(q), n, oracle, max_degree)
    return _values(rows)


def verify(suite, *, q=None, n_max=-1, seed=1, as_printed=False):
    """Run a verification suite and return its reports as dicts."""
    return _qconn.verify(suite, None if q is None else str(q), n_max, seed, as_printed)


def run(argv, max_degree=16):
    """Run a command line. Returns (exit_code, document, diagnostics); document is parsed JSON when possible."""
    code, output, diagnostics = _qconn.run_arguments([str(a) for a in argv], max_degree)
    try:
        document = _json.loads(output)
    except ValueError:
        document = output
    return code, document, diagnostics
