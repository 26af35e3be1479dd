import numpy as np
from hypothesis import given, settings, strategies as st

from qcylab import kernels


def _tensors(draw, dim, ranks):
    return [np.array(draw(st.lists(st.integers(-3, 3), min_size=dim ** r, max_size=dim ** r)),
                     dtype=np.int64).reshape((dim,) * r) for r in ranks]


@settings(max_examples=30, deadline=None)
@given(st.data())
def test_compiled_and_python_contractions_agree(data):
    dim = data.draw(st.integers(2, 3))
    ranks = data.draw(st.lists(st.integers(1, 3), min_size=1, max_size=3))
    nvars = data.draw(st.integers(1, 4))
    factors = _tensors(data.draw, dim, ranks)
    slots = [[data.draw(st.integers(0, nvars - 1)) for _ in range(r)] for r in ranks]
    used = sorted({s for sl in slots for s in sl})
    remap = {v: k for k, v in enumerate(used)}
    slots = [[remap[s] for s in sl] for sl in slots]
    nv = len(used)
    expected = kernels.contract_python(factors, slots, nv)
    assert kernels.contract_compiled(factors, slots, nv) == expected
    assert kernels.contract(factors, slots, nv) == expected


def test_monomial_moments_backends_agree():
    rng = np.random.default_rng(1)
    pts = rng.standard_normal((500, 4))
    exps = np.array([[2, 0, 0, 0], [2, 2, 0, 0], [0, 4, 2, 0]], dtype=np.int64)
    s_py, q_py = kernels.monomial_moments_python(pts, exps)
    s, q = kernels.monomial_moments(pts, exps)
    np.testing.assert_allclose(s, s_py, rtol=1e-12)
    np.testing.assert_allclose(q, q_py, rtol=1e-12)


def test_backend_is_reported():
    assert kernels.BACKEND in ("compiled", "python")
