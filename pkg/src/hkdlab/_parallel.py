import os
from concurrent.futures import ThreadPoolExecutor

ENV_THREADS = "HKDLAB_THREADS"


def worker_count():
    """Workers for grid scans: ``$HKDLAB_THREADS`` (0 or unset means auto)."""
    raw = os.environ.get(ENV_THREADS, "0").strip() or "0"
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = min(8, os.cpu_count() or 1)
    return n


def pmap(fn, items):
    """Ordered map; results are identical to ``list(map(fn, items))``."""
    items = list(items)
    n = min(worker_count(), len(items))
    if n <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=n) as ex:
        return list(ex.map(fn, items))
