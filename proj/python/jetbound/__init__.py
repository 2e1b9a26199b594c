"""Exact jet-separation bounds for Seshadri constants of lattice polytopes.

Coordinates may be ints, Fractions or "p/q" strings. Bound results are dicts
whose rational fields are converted to ``fractions.Fraction``.
"""

import json
from fractions import Fraction

from . import _core

__all__ = ["seshadri", "multi", "lattice_change", "jets", "decompose", "canonical", "engine_version"]

engine_version = _core.engine_version


def _coord(x):
    if isinstance(x, bool) or not isinstance(x, (int, Fraction, str)):
        raise TypeError(f"coordinates must be int, Fraction or str, not {type(x).__name__}")
    return x if isinstance(x, int) else str(x)


def _rows(rows):
    return [[_coord(x) for x in row] for row in rows]


def _polytope(vertices):
    return json.dumps({"kind": "polytope", "vertices": _rows(vertices)})


def _weights(w):
    if isinstance(w, str):
        return w
    return ",".join(str(Fraction(x)) for x in w)


def _bound(r):
    out = dict(r)
    out["lower"] = Fraction(r["lower"])
    upper = dict(r["upper"])
    upper["radicand"] = Fraction(upper["radicand"])
    if upper["value"] is not None:
        upper["value"] = Fraction(upper["value"])
    out["upper"] = upper
    return out


def canonical(instance):
    """Canonical JSON text of an instance given as a dict."""
    return _core.canonical(json.dumps(instance))


def seshadri(vertices, k_budget=6, seed=None, certify=False):
    """Single-point k-sweep bound s(Delta; 1)."""
    return _bound(json.loads(_core.seshadri(_polytope(vertices), k_budget, seed, certify)))


def multi(vertices, weights, k_budget=6, trials=3, seed=None, certify=False):
    """Randomized multipoint bound s(Delta; w)."""
    r = _core.multi(_polytope(vertices), _weights(weights), k_budget, trials, seed, certify)
    return _bound(json.loads(r))


def lattice_change(vertices, matrix, weights=(1,), k_budget=6, seed=None, certify=False):
    """Bound for s(Delta; w repeated deg(matrix) times) through the pullback polytope."""
    m = json.dumps({"kind": "lattice-map", "matrix": matrix})
    r = json.loads(_core.lattice_change(_polytope(vertices), m, _weights(weights), k_budget, seed, certify))
    r["degree"] = int(r["degree"])
    r["result"] = _bound(r["result"])
    return r


def jets(points, generators=None, mbar=None, m_max=None, certify=False):
    """Jet rank of a lattice point set, against a staircase ideal or by ascending order."""
    pts = json.dumps({"kind": "lattice-set", "points": [list(p) for p in points], "dim": len(points[0]) if points else 0})
    ideal = None if generators is None else json.dumps({"kind": "ideal", "generators": [list(g) for g in generators]})
    return json.loads(_core.jets(pts, ideal, None if mbar is None else list(mbar), m_max, certify))


def decompose(vertices, cells, parent=None, polytope=None, weights=None, k_budget=6, trials=3, seed=None,
              certify=False):
    """Validate a decomposition, find a lifting function and bound each cell.

    ``vertices`` is the point pool, ``cells`` and ``parent`` index into it;
    the parent defaults to the hull of the pool.
    """
    doc = {"kind": "decomposition", "vertices": _rows(vertices), "cells": [list(c) for c in cells]}
    if parent is not None:
        doc["parent"] = list(parent)
    poly = None if polytope is None else _polytope(polytope)
    w = None if weights is None else [_weights(x) for x in weights]
    r = json.loads(_core.decompose(json.dumps(doc), poly, w, k_budget, trials, seed, certify))
    if "result" in r:
        r["result"] = _bound(r["result"])
        r["cells"] = [_bound(c) for c in r["cells"]]
    return r
