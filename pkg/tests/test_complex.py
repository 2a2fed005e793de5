from math import comb

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from randcomplex.complex import (
    Complex2,
    _splitmix64_array,
    all_triples,
    derive_seed,
    face_counts,
    pair_rank,
    parse_complex,
    read_complex,
    sample_complex,
    splitmix64,
    triangles_of_edge,
    triple_rank,
    write_complex,
)


@pytest.mark.parametrize("seed", [0, 1, 2**63 + 5])
def test_p_zero_and_one(seed):
    assert len(sample_complex(10, 0.0, seed)) == 0
    assert len(sample_complex(10, 1.0, seed)) == 120


def test_sample_errors():
    with pytest.raises(ValueError):
        sample_complex(2, 0.5, 0)
    with pytest.raises(ValueError):
        sample_complex(5, 1.5, 0)


def test_f2_is_binomial():
    n, p, trials = 20, 0.3, 10_000
    N = comb(n, 3)
    f2 = np.array([len(sample_complex(n, p, derive_seed(11, t))) for t in range(trials)])
    mean, var = N * p, N * p * (1 - p)
    assert abs(f2.mean() - mean) <= 3 * np.sqrt(var / trials)
    # sample variance: SE of s^2 ~ sqrt((mu4 - var^2 (n-3)/(n-1)) / n), mu4 ~ 3 var^2 for large N
    se_var = np.sqrt(2 * var**2 / (trials - 1))
    assert abs(f2.var(ddof=1) - var) <= 3 * se_var


def test_determinism():
    a = sample_complex(15, 0.4, 123)
    b = sample_complex(15, 0.4, 123)
    assert a == b and a.triangles == b.triangles
    assert sample_complex(15, 0.4, 124) != a


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**64 - 1), st.floats(0, 1), st.floats(0, 1))
def test_monotone_coupling(seed, p, q):
    lo, hi = sorted((p, q))
    small, big = sample_complex(9, lo, seed), sample_complex(9, hi, seed)
    assert set(small.triangles) <= set(big.triangles)


def test_face_counts():
    assert face_counts(Complex2.full(4)) == (4, 6, 4)
    assert face_counts(Complex2.skeleton(5)) == (5, 10, 0)
    X = sample_complex(12, 0.2, 5)
    assert face_counts(X)[2] == len(X.triangles)


def test_triangles_of_edge():
    assert set(triangles_of_edge(Complex2.full(4), 2, 3)) == {1, 4}
    assert triangles_of_edge(Complex2.full(4), 3, 2) == triangles_of_edge(Complex2.full(4), 2, 3)
    assert triangles_of_edge(Complex2.skeleton(4), 1, 2) == ()
    assert triangles_of_edge(Complex2(4, [(2, 3, 4)]), 2, 4) == (3,)
    with pytest.raises(ValueError):
        triangles_of_edge(Complex2.full(4), 1, 5)
    with pytest.raises(ValueError):
        triangles_of_edge(Complex2.full(4), 2, 2)


def test_complex_validation_and_normalization():
    X = Complex2(5, [(2, 3, 4), (1, 2, 3), (2, 3, 4)])
    assert X.triangles == ((1, 2, 3), (2, 3, 4))
    assert (4, 3, 2) in X and (1, 4, 5) not in X
    for bad in [(0, 1, 2), (1, 2, 6), (3, 2, 4), (1, 1, 2)]:
        with pytest.raises(ValueError):
            Complex2(5, [bad])
    with pytest.raises(ValueError):
        Complex2(2, [])


@pytest.mark.parametrize("n", [3, 4, 7, 12])
def test_ranks_match_enumeration(n):
    T = all_triples(n)
    assert len(T) == comb(n, 3)
    for r, (i, j, k) in enumerate(T.tolist()):
        assert triple_rank(n, i, j, k) == r
    pairs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)]
    assert [pair_rank(n, u, v) for u, v in pairs] == list(range(len(pairs)))


def test_splitmix_scalar_matches_vector():
    xs = [0, 1, 2**32, 2**64 - 1, 0x1234567890ABCDEF]
    vec = _splitmix64_array(np.array(xs, dtype=np.uint64))
    assert [int(v) for v in vec] == [splitmix64(x) for x in xs]
    # published first output of splitmix64 seeded with 0
    assert splitmix64(0) == 0xE220A8397B1DCDAF


def test_file_roundtrip(tmp_path):
    X = sample_complex(9, 0.3, 2)
    path = tmp_path / "x.txt"
    write_complex(X, path)
    assert read_complex(path) == X
    text = "# comment\n\nn 5\n1 2 3  # trailing\n\n2 4 5\n"
    assert parse_complex(text) == Complex2(5, [(1, 2, 3), (2, 4, 5)])


@pytest.mark.parametrize("text", ["", "5\n", "n 5\n1 2\n", "n 5\n3 2 1\n", "n 5\n1 2 9\n"])
def test_parse_errors(text):
    with pytest.raises(ValueError):
        parse_complex(text)
