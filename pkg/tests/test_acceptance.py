"""Full-size acceptance gate.  Each test prints one verdict line."""

import time

import pytest

from jacobispec import acceptance


def _verdict(index, name, ok, detail, seconds):
    status = "PASS" if ok else "FAIL"
    print(f"criterion {index:2d} [{name}] {status} ({seconds:.1f}s) {detail}")


def _run(index, fn, *args):
    start = time.perf_counter()
    name, ok, detail = fn(*args)
    _verdict(index, name, ok, detail, time.perf_counter() - start)
    assert ok, f"criterion {index}: {detail}"


def test_criterion_1_dual_route_curves():
    _run(1, acceptance.criterion_1)


def test_criterion_2_frozen_size4_curve():
    _run(2, acceptance.criterion_2)


def test_criterion_3_scalar_block_lines():
    _run(3, acceptance.criterion_3)


def test_criterion_4_stratum_closed_form():
    _run(4, acceptance.criterion_4)


def test_criterion_5_truncation_coprimality():
    _run(5, acceptance.criterion_5)


def test_criterion_6_palindromic_split():
    _run(6, acceptance.criterion_6)


def test_criterion_7_generic_full_group():
    _run(7, acceptance.criterion_7)


def test_criterion_8_monodromy_matches_exact():
    _run(8, acceptance.criterion_8)


def test_criterion_9_degree8_scan():
    _run(9, acceptance.criterion_9)


def test_criterion_10_repeated_diagonal_guard():
    _run(10, acceptance.criterion_10)
