import os
import random
import subprocess
import sys

import numpy as np
import pytest
from hypothesis import given, strategies as st

from oracles import random_tree_graph, random_unimodular_graph
from treelattice import _pykernels, kernels
from treelattice.grouping import units_mod

ck = pytest.importorskip("treelattice._ckernels")
seeds = st.integers(0, 2**32 - 1)


def same(a, b):
    if isinstance(a, tuple):
        return len(a) == len(b) and all(same(x, y) for x, y in zip(a, b))
    return np.array_equal(np.asarray(a), np.asarray(b))


def test_backend_is_compiled_by_default():
    assert kernels.BACKEND == "cython"


def test_pure_python_switch():
    env = dict(os.environ, TREELATTICE_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "import treelattice; print(treelattice.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"


@given(seeds, st.integers(1, 9), st.integers(-1, 4))
def test_bfs_parity(seed, size, max_dist):
    g, _ = random_unimodular_graph(random.Random(seed), size, True)
    c = g._csr
    src = c["vpos"][min(g.vertices)]
    # outgoing adjacency: origin of an incoming edge is a neighbour
    args = (c["in_ptr"], c["origin"][c["in_edges"]], src, max_dist)
    assert same(_pykernels.bfs_distances(*args), ck.bfs_distances(*args))


@given(seeds, st.integers(1, 6), st.integers(0, 5))
def test_expand_cover_parity(seed, size, radius):
    g = random_tree_graph(random.Random(seed), size, max_index=3)
    c = g._csr
    args = (c["in_ptr"], c["in_edges"], c["origin"], c["index"], c["reverse"],
            c["vpos"][min(g.vertices)], radius)
    assert same(_pykernels.expand_cover(*args), ck.expand_cover(*args))


@given(st.integers(1, 60), st.integers(1, 6), st.integers(1, 5), st.integers(1, 5))
def test_tower_kernel_parity(A, B, a_mul, b_mul):
    A2, B2 = A * a_mul, B * b_mul
    units = np.asarray(units_mod(A2), dtype=np.int64)
    for name, args in [("tower_injective", (A, B, A2, B2, a_mul, b_mul)),
                       ("tower_equivariance_failures", (units, A, B, A2, B2, a_mul, b_mul)),
                       ("tower_action_bijective", (units, A2)),
                       ("tower_faithful_witnesses", (units, A2))]:
        assert same(getattr(_pykernels, name)(*args), getattr(ck, name)(*args)), name


def test_tower_kernels_small_cases():
    assert _pykernels.tower_injective(3, 1, 9, 1, 3, 0)
    assert not _pykernels.tower_injective(3, 1, 3, 1, 3, 0)
    assert list(_pykernels.tower_faithful_witnesses(np.asarray([1, 2, 4]), 9)) == [-1, 1, 1]
