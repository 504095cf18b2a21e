import numpy as np
import pytest

from ordfact import sieve
from ordfact.counts import d_k


def test_spf_is_least_prime_factor():
    spf = sieve.spf_sieve(5000)
    for n in range(2, 5001):
        p = int(spf[n])
        assert n % p == 0
        assert all(p % q for q in range(2, int(p**0.5) + 1))
        assert all(n % q for q in range(2, p))


@pytest.mark.parametrize("k", [0, 1, 2, 3, 5])
def test_divisor_count_sieve_matches_product_formula(k):
    table = sieve.divisor_count_sieve(3000, k)
    assert [int(v) for v in table[1:]] == [d_k(n, k) for n in range(1, 3001)]


def test_sieve_tables_sample_verification():
    tabs = sieve.SieveTables.build(10**5, k=3)
    rng = np.random.default_rng(1)
    assert tabs.verify_samples(rng.integers(2, 10**5, size=300))
    assert tabs.factor(360) == [(2, 3), (3, 2), (5, 1)]


def test_mobius_sieve_small():
    assert sieve.mobius_sieve(12).tolist() == [0, 1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


def test_allocation_guard():
    with pytest.raises(MemoryError):
        sieve.divisor_count_sieve(sieve.MAX_SIEVE + 1, 2)


def test_dump_load_roundtrip(tmp_path):
    table = sieve.summatory_table(sieve.divisor_count_sieve(1000, 2))
    path = tmp_path / "d2.bin"
    sieve.save_table(path, 2, table)
    raw = path.read_bytes()
    assert raw[:4] == b"ODFK"
    assert len(raw) == 20 + 8 * 1001
    k, back = sieve.load_table(path)
    assert k == 2 and np.array_equal(back, table)


def test_load_rejects_bad_magic(tmp_path):
    path = tmp_path / "junk.bin"
    path.write_bytes(b"NOPE" + bytes(40))
    with pytest.raises(ValueError):
        sieve.load_table(path)


def test_cache_dir_env(tmp_path, monkeypatch):
    monkeypatch.setenv("FK_CACHE_DIR", str(tmp_path))
    a = sieve.cached_summatory_divisor_table(500, 2)
    assert (tmp_path / "D2_500.bin").exists()
    b = sieve.cached_summatory_divisor_table(500, 2)
    assert np.array_equal(a, b) and int(a[10]) == 27
