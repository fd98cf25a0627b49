"""Exact sigma-reduction and integer conjugacy for SL(3,Z) Hessenberg matrices.

Matrices are passed as text, rows separated by ';' and entries by ',':
``"0,0,1;1,0,1;0,1,3"``.  Hessenberg types read ``"a11,a21|a12,a22,a32"``.
All exact values cross the boundary as decimal strings and are converted to
Python integers here.
"""

import json as _json

from . import _core

__all__ = [
    "charpoly",
    "discriminant",
    "spectrum",
    "hessenberg_type",
    "complexity",
    "complete_type",
    "family_matrix",
    "md_characteristic",
    "reduce_to_perfect",
    "is_sigma_reduced",
    "box_search_min",
    "min_md",
    "sigma_reduced_set",
    "integer_conjugate",
    "detect_power_root",
    "classify_cell",
    "sail",
]


def _ints(values):
    return [int(v) for v in values]


def charpoly(matrix):
    """Coefficients (b1, b2, b3) of -t^3 + b1 t^2 - b2 t + b3."""
    return tuple(int(b) for b in _core.charpoly(matrix))


def discriminant(matrix):
    return int(_core.discriminant(matrix))


def spectrum(matrix):
    """One of 'ReduciblePoly', 'RS', 'NRS', 'DegenerateDiscriminant'."""
    return _core.spectrum(matrix)


def hessenberg_type(matrix):
    """(type text, perfect flag) of an upper Hessenberg matrix."""
    return _core.hessenberg_type(matrix)


def complexity(type_text):
    return int(_core.complexity(type_text))


def complete_type(type_text):
    return _core.complete_type(type_text)


def family_matrix(type_text, m, n, v=""):
    return _core.family_matrix(type_text, v, m, n)


def md_characteristic(matrix, vector):
    return int(_core.md_characteristic(matrix, vector))


def reduce_to_perfect(matrix, vector="1,0,0"):
    """The perfect Hessenberg matrix (M|v)."""
    return _core.reduce_to_perfect(matrix, vector)


def is_sigma_reduced(matrix):
    d = _json.loads(_core.is_sigma_reduced(matrix))
    if "mu" in d:
        d["mu"] = int(d["mu"])
    d["witnesses"] = [_ints(w) for w in d.get("witnesses", [])]
    return d


def box_search_min(matrix, bound=100):
    d = _json.loads(_core.box_search_min(matrix, bound))
    d["mu"] = int(d["mu"])
    d["witnesses"] = [_ints(w) for w in d["witnesses"]]
    return d


def min_md(matrix):
    d = _json.loads(_core.min_md(matrix))
    d["mu"] = int(d["mu"])
    d["argmins"] = [_ints(w) for w in d["argmins"]]
    return d


def sigma_reduced_set(matrix):
    d = _json.loads(_core.sigma_reduced_set(matrix))
    d["mu"] = int(d["mu"])
    return d


def integer_conjugate(m1, m2):
    return _core.integer_conjugate(m1, m2)


def detect_power_root(matrix, k=2):
    return _core.detect_power_root(matrix, k)


def classify_cell(type_text, m, n, v=""):
    d = _json.loads(_core.classify_cell(type_text, v, m, n))
    for key in ("sigma", "delta", "mu"):
        if key in d:
            d[key] = int(d[key])
    return d


def sail(matrix, bound=20):
    return _json.loads(_core.sail(matrix, bound))
