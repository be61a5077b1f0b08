#!/usr/bin/env python
# -*- coding: utf-8 -*-

import threading
import time

import pytest

from workers.cell_worker import CellWorker
from workers.thread_manager import ThreadManager


def slow_square(k: int):
    def task():
        # las primeras celdas terminan más tarde
        time.sleep(0.01 * (5 - k))
        return k * k

    return task


@pytest.mark.parametrize("threads", [1, 4])
def test_results_follow_submission_order(threads):
    manager = ThreadManager(threads)
    assert manager.max_threads == threads
    results = manager.run_cells([(k, slow_square(k)) for k in range(6)])
    assert results == [0, 1, 4, 9, 16, 25]


def test_single_thread_runs_inline():
    seen = []
    ThreadManager(1).run_cells([(0, lambda: seen.append(threading.get_ident()))])
    assert seen == [threading.get_ident()]


def test_first_exception_is_raised():
    def boom():
        raise ValueError("celda rota")

    manager = ThreadManager(2)
    with pytest.raises(ValueError, match="celda rota"):
        manager.run_cells([(0, lambda: 1), (1, boom), (2, lambda: 3)])


def test_zero_threads_falls_back_to_one():
    assert ThreadManager(0).max_threads == 1


def test_cell_worker_stores_result_and_error():
    worker = CellWorker("a", lambda: 42)
    worker.run()
    assert worker.result == 42
    assert worker.error is None

    failing = CellWorker("b", lambda: 1 / 0, index=3)
    errors = []
    failing.signals.error_occurred.connect(lambda index, message: errors.append((index, message)))
    failing.run()
    assert isinstance(failing.exception, ZeroDivisionError)
    assert errors and errors[0][0] == 3
    assert "CellWorker" in errors[0][1]


def test_stopped_worker_does_not_execute():
    calls = []
    worker = CellWorker("c", lambda: calls.append(1))
    worker.stop()
    assert worker.stopped
    worker.run()
    assert calls == []
    assert worker.result is None


def test_failure_cancels_pending_cells():
    calls = []

    def boom():
        raise RuntimeError("fallo")

    manager = ThreadManager(1)
    cells = [(0, lambda: calls.append(0)), (1, boom), (2, lambda: calls.append(2))]
    with pytest.raises(RuntimeError):
        manager.run_cells(cells)
    assert calls == [0]
    assert manager.completed == 3


def test_completed_counts_finished_cells():
    manager = ThreadManager(3)
    manager.run_cells([(k, slow_square(k)) for k in range(5)])
    assert manager.completed == 5
    manager.stop_all_workers()
    assert manager.run_cells([]) == []
    assert manager.completed == 0
