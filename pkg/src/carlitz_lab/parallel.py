"""Deterministic parallel map: results are collected in input order, so any
reduction downstream is bit-identical regardless of the worker count."""

from __future__ import annotations

import concurrent.futures
import os


def worker_count(requested=None):
    if requested is None:
        requested = int(os.environ.get("CARLITZ_LAB_THREADS", "1"))
    return max(1, requested)


def ordered_map(fn, items, threads=None):
    items = list(items)
    n = worker_count(threads)
    if n <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with concurrent.futures.ThreadPoolExecutor(max_workers=n) as pool:
        futures = [pool.submit(fn, x) for x in items]
        return [f.result() for f in futures]
