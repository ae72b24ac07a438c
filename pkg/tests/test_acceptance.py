'''Acceptance gate: one test per documented criterion, one line per result.'''

import time

from mgalg import verify


def _run(fn, budget=None, **kw):
    start = time.monotonic()
    result = fn(**kw)
    elapsed = time.monotonic() - start
    print(f'{"PASS" if result.ok else "FAIL"}  {result.name}: '
          f'{result.detail} [{elapsed:.1f}s]')
    assert result.ok, (result.name, result.detail)
    if budget is not None:
        assert elapsed < budget, (result.name, elapsed, budget)
    return result


def test_criterion_01_free_counts():
    _run(verify.criterion_free_counts, budget=60)


def test_criterion_02_minimal_counts():
    _run(verify.criterion_minimal_counts)


def test_criterion_03_admissible_parts():
    _run(verify.criterion_admissible_parts)


def test_criterion_04_free_oracle():
    _run(verify.criterion_free_oracle, budget=60)


def test_criterion_05_identities():
    _run(verify.criterion_identities, max_m=5, max_size=6)


def test_criterion_06_width():
    _run(verify.criterion_width, budget=600, max_size=7)


def test_criterion_07_duality():
    _run(verify.criterion_duality, max_size=7, space_cap=10)


def test_criterion_08_congruences():
    _run(verify.criterion_congruences, max_size=6)


def test_criterion_09_varieties():
    _run(verify.criterion_varieties, max_size=6, max_param=4)


def test_criterion_10_interior():
    _run(verify.criterion_interior, max_size=5)


def test_criterion_11_glivenko():
    _run(verify.criterion_glivenko, max_size=6)


def test_criterion_12_discriminator():
    _run(verify.criterion_discriminator, max_size=6)


def test_criterion_13_char_chain():
    _run(verify.criterion_char_chain, max_m=4)


def test_criterion_14_witness():
    _run(verify.criterion_witness, k=10, truncation=12)


def test_full_suite_is_deterministic():
    first = verify.render_report(verify.run_suite('witness'))
    second = verify.render_report(verify.run_suite('witness'))
    assert first == second
