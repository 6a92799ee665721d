# Copyright 2026 The primegaps Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import math

import pytest

import primegaps as pg


def trial_primes(n):
    return [k for k in range(2, n + 1) if all(k % q for q in range(2, math.isqrt(k) + 1))]


@pytest.fixture(scope="module")
def run():
    return pg.collect(1 << 20)


def test_sieve_agrees_with_trial_division():
    assert pg.primes_between(2, 10000) == trial_primes(10000)
    assert pg.prime_count(1 << 20) == 82025


def test_constants():
    assert pg.constants().C2 == pytest.approx(1.3203236316, rel=1e-9)
    assert pg.singular_series(6) == pytest.approx(2.0)
    assert pg.odd_prime_divisors(30) == [3, 5]


def test_checkpoint_identities(run):
    assert [c.x for c in run] == [1 << k for k in range(15, 21)]
    for c in run:
        assert pg.verify(c)
        assert sum(c.histogram.values()) == c.pi - 2
        assert sum(d * n for d, n in c.histogram.items()) == c.last_prime - 3


def test_gap_statistics_match_python(run):
    primes = trial_primes(1 << 15)
    gaps = [b - a for a, b in zip(primes[1:], primes[2:])]
    c = run[0]
    assert c.sum_sq_gaps == sum(g * g for g in gaps)
    assert c.histogram[2] == gaps.count(2)
    assert c.harmonic_sum == pytest.approx(sum(1 / p for p in primes), rel=1e-14)


def test_evaluate_and_fit():
    assert pg.evaluate("TWIN_LI2", x=1e6) > 0
    with pytest.raises(ValueError):
        pg.evaluate("TAU_C1", x=1e6, pi_x=78498, d=3)
    points = [(x, math.exp(2.0 - 0.5 * x)) for x in (1.0, 2.0, 3.0)]
    fit = pg.fit_exponential(points, False)
    assert fit.a == pytest.approx(math.exp(2.0))
    assert fit.b == pytest.approx(0.5)


def test_andrica_top_row():
    n, p, q, d, a = pg.andrica_table(1000, 1)[0]
    assert (n, p, q, d) == (4, 7, 11, 4)
    assert a == pytest.approx(0.6708735, abs=1e-7)


def test_store_round_trip(tmp_path, run):
    pg.collect_to_directory(1 << 18, tmp_path / "run")
    loaded = pg.load_checkpoints(tmp_path / "run")
    assert loaded == run[:4]
    assert not pg.resume_directory(tmp_path / "run")
    csv = pg.export_csv("table2", loaded)
    assert csv.splitlines()[0] == "n,p_n,p_next,d_n,A_n"


def test_corrupt_checkpoint_is_rejected(tmp_path, run):
    path = pg.write_checkpoint(run[0], tmp_path)
    text = path.read_text().replace("primegaps-checkpoint v1", "primegaps-checkpoint v9")
    path.write_text(text)
    with pytest.raises(pg.UpgradeRequiredError):
        pg.read_checkpoint(path)
