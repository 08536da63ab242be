import json
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import M, golden_path
from supertrop import classify as cl
from supertrop import determinant as det
from supertrop import oracle
from supertrop.errors import DomainError
from supertrop.matrix import Matrix, format_matrix, identity, mat_mul, transpose
from supertrop.random_gen import KINDS, random_special
from supertrop.semiring import ONE, ZERO, TropElem


def test_brute_force_identity():
    bf = oracle.brute_force_per(identity(3))
    assert bf.per == ONE
    assert bf.bid == (ONE, ZERO)
    assert bf.dominant == frozenset({(0, 1, 2)})


def test_brute_force_bl1():
    a = M("1 0; 2 4")
    assert oracle.brute_force_per(mat_mul(transpose(a), a)).per == TropElem.ghost_of(12)


def test_brute_force_bound():
    with pytest.raises(DomainError):
        oracle.brute_force_per(identity(11))


def test_registry_complete():
    assert oracle.registry_gaps() == []
    for mod, slots in oracle.INVARIANTS.items():
        for k in range(len(slots)):
            assert any(p.module == mod and p.covers == k for p in oracle.PROPERTIES.values()), (mod, k)


def test_registry_detects_orphans(monkeypatch):
    monkeypatch.setitem(oracle.PROPERTIES, "stray", oracle.Property("stray", "semiring", 99, lambda rng: None))
    assert "orphan property stray" in oracle.registry_gaps()


def test_unknown_property():
    with pytest.raises(DomainError):
        oracle.property_run("no_such_property", 1)


@pytest.mark.parametrize("pid", sorted(oracle.PROPERTIES))
def test_every_property_passes_a_short_run(pid):
    r = oracle.property_run(pid, 40, seed=3)
    assert r.status == "pass", r.to_json()


def test_replay_is_deterministic(monkeypatch):
    seen = {}

    def flaky(rng):
        x = rng.random()
        return f"x={x!r}" if x < 0.5 else None

    monkeypatch.setitem(oracle.PROPERTIES, "flaky", oracle.Property("flaky", "cli", 0, flaky))
    r = oracle.property_run("flaky", 30, seed=11)
    assert r.failures
    for f in r.failures:
        assert oracle.run_trial("flaky", f.seed) == f.message
        assert f.seed == oracle.trial_seed("flaky", 11, f.trial)


def test_crash_becomes_failure(monkeypatch):
    def crash(rng):
        raise ZeroDivisionError("bad")

    monkeypatch.setitem(oracle.PROPERTIES, "crash", oracle.Property("crash", "cli", 0, crash))
    r = oracle.property_run("crash", 50, max_failures=5)
    assert len(r.failures) == 5
    assert r.failures[0].message == "ZeroDivisionError: bad"


def test_report_json():
    rec = oracle.property_run("per_transpose", 10).to_json()
    assert rec["status"] == "pass" and rec["evidence"] == "sampled" and rec["failures"] == []


def test_vacuous_trials_counted():
    r = oracle.property_run("bqsl2_generation", 200)
    assert 0 < r.vacuous < 200


def test_seed_stability_golden():
    with open(golden_path("random_special.json"), encoding="utf-8") as fh:
        table = json.load(fh)
    for key, text in table.items():
        kind, n, seed = key.split("/")
        assert format_matrix(random_special(int(seed), int(n), kind)) == text, key


@pytest.mark.parametrize("kind", KINDS)
def test_random_special_classes(kind):
    for seed in range(30):
        a = random_special(seed, 3, kind)
        assert a == random_special(seed, 3, kind)
        if kind == "SL":
            assert det.per(a) == ONE
        elif kind == "strictly_normal":
            assert cl.shape_class(a).strictly_normal
        elif kind == "definite":
            assert det.is_definite(a)
        elif kind == "SL1":
            assert cl.in_SL1(a)
        elif kind == "nonsingular":
            assert det.per(a).is_tangible
        elif kind == "tangible":
            assert a.is_tangible()


def test_random_special_errors():
    with pytest.raises(DomainError):
        random_special(0, 0)
    with pytest.raises(DomainError):
        random_special(0, 2, "weird")


@given(st.integers(0, 2**32))
def test_brute_force_adj_agrees(seed):
    a = random_special(seed, random.Random(seed).randint(1, 4))
    from supertrop.nabla import adj

    assert oracle.brute_force_adj(a) == adj(a)


def test_conjecture_search_reports_only_definite_non_triangular():
    found = oracle.conjecture_search(trials=60, seed=0, n=3)
    for c in found:
        assert det.is_definite(c.matrix)
        assert not oracle.is_nabla_image(c.matrix)
        from supertrop.elementary import triangular_word, word_product

        assert triangular_word(c.matrix) is None
        assert word_product(c.lower + c.upper, 3) == c.matrix
