"""Hot kernels with a compiled backend and a numpy fallback.

The compiled module is used when it imports and ``QCYLAB_PURE`` is unset.
Both backends return identical results; the exact contraction falls back to
Python integers whenever the int64 magnitude bound could be exceeded.
"""
from __future__ import annotations

import os
import string
from typing import Sequence

import numpy as np

try:
    if os.environ.get("QCYLAB_PURE"):
        raise ImportError("pure backend requested")
    from . import _kernels as _compiled
except ImportError:
    _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"

_INT64_SAFE = 2 ** 62


def _as_int_tensor(arr) -> np.ndarray:
    out = np.empty(np.shape(arr), dtype=object)
    for idx, v in np.ndenumerate(np.asarray(arr, dtype=object)):
        iv = int(v)
        if iv != v:
            raise ValueError("contraction factors must be integer valued")
        out[idx] = iv
    return out


def _order_variables(factors, slot_lists, nvars):
    # complete the sparsest factors first so zero entries prune early
    density = [np.count_nonzero(f) / max(f.size, 1) for f in factors]
    order: list[int] = []
    for f in sorted(range(len(factors)), key=lambda k: density[k]):
        for s in slot_lists[f]:
            if s not in order:
                order.append(s)
    order += [v for v in range(nvars) if v not in order]
    return {old: new for new, old in enumerate(order)}


def contract_python(factors: Sequence, slot_lists: Sequence[Sequence[int]], nvars: int) -> int:
    """Exact sum over all index assignments via einsum on Python integers."""
    letters = string.ascii_letters
    spec = ",".join("".join(letters[s] for s in sl) for sl in slot_lists) + "->"
    objs = [_as_int_tensor(f) for f in factors]
    return int(np.einsum(spec, *objs, optimize="greedy"))


def contract_compiled(factors, slot_lists, nvars: int) -> int:
    ints = [_as_int_tensor(f) for f in factors]
    dim = ints[0].shape[0]
    bound = float(dim) ** nvars
    for f in ints:
        bound *= max((abs(int(v)) for v in f.flat), default=0)
    if _compiled is None or bound >= _INT64_SAFE:
        return contract_python(ints, slot_lists, nvars)
    remap = _order_variables(ints, slot_lists, nvars)
    arrays = [np.asarray(f, dtype=np.int64) for f in ints]
    slots = [[remap[s] for s in sl] for sl in slot_lists]
    return _compiled.contract_int64(arrays, slots, nvars, dim)


def contract(factors, slot_lists, nvars: int) -> int:
    """Sum over every assignment of ``nvars`` index variables (each ranging
    over the common dimension) of the product of factor entries."""
    if _compiled is not None:
        return contract_compiled(factors, slot_lists, nvars)
    return contract_python(factors, slot_lists, nvars)


def monomial_moments_python(pts: np.ndarray, exps: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    sums = np.empty(len(exps))
    sq = np.empty(len(exps))
    for k, e in enumerate(exps):
        vals = np.prod(pts ** e, axis=1)
        sums[k] = vals.sum()
        sq[k] = (vals * vals).sum()
    return sums, sq


def monomial_moments(pts: np.ndarray, exps: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    pts = np.ascontiguousarray(pts, dtype=np.float64)
    exps = np.ascontiguousarray(exps, dtype=np.int64)
    if _compiled is not None:
        return _compiled.monomial_moments(pts, exps)
    return monomial_moments_python(pts, exps)
