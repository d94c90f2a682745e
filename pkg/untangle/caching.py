"""
Decorator factory memoising exact searches in memory or on disk
"""
import functools
import hashlib
import os
import pickle
import time
from os import path

from untangle import constants
from untangle.logger import logger


def cache_dir() -> str:
    """``UNTANGLE_CACHE_DIR`` or ``~/.cache/untangle``"""
    default = path.join(path.expanduser("~"), ".cache", "untangle")
    return os.environ.get(constants.CACHE_DIR_ENV, default)


def cache(
    ttl: int,
    min_memory_time: float = 0.1,
    min_disk_time: float = 2.0,
    directory: str = None,
    exclude: dict = None,
    should_cache=None,
):
    """Caches search results keyed on the function name and its arguments.

    A call slower than ``min_memory_time`` is kept in memory, one slower
    than ``min_disk_time`` is pickled inside ``directory`` (resolved from
    :func:`cache_dir` at call time when not given). Entries expire after
    ``ttl`` seconds; a negative ``ttl`` never expires. Matchings are keyed
    on their fingerprint, so equal configurations share one entry.
    """
    if exclude is None:
        exclude = {}

    def normalize(arg):
        fingerprint = getattr(arg, "fingerprint", None)
        return fingerprint() if callable(fingerprint) else arg

    def compute_key(func_name, args, kwargs):
        kept = [
            normalize(arg)
            for i, arg in enumerate(args)
            if i not in exclude.get("args", [])
        ]
        named = {
            k: normalize(v)
            for k, v in sorted(kwargs.items())
            if k not in exclude.get("kwargs", [])
        }
        md5sum = hashlib.md5()
        md5sum.update(pickle.dumps((func_name, kept, named)))
        return md5sum.hexdigest()

    def is_fresh(inserted_at):
        return ttl < 0 or time.time() - inserted_at < ttl

    def decorator(fn):
        memory_cache = {}

        def decorated(*args, **kwargs):
            key = compute_key(fn.__name__, args, kwargs)

            entry = memory_cache.get(key)
            if entry is not None:
                inserted_at, value = entry
                if is_fresh(inserted_at):
                    return value
                del memory_cache[key]

            folder = directory or cache_dir()
            filepath = path.join(folder, f"{key}.pkl")
            if path.exists(filepath):
                if is_fresh(os.stat(filepath).st_mtime):
                    logger.debug("%s: disk cache hit %s", fn.__name__, key)
                    with open(filepath, "rb") as f:
                        return pickle.load(f)
                os.unlink(filepath)

            start = time.time()
            result = fn(*args, **kwargs)
            elapsed = time.time() - start

            if should_cache is not None and not should_cache(result, *args, **kwargs):
                return result
            if min_memory_time <= elapsed < min_disk_time:
                memory_cache[key] = (time.time(), result)
            elif elapsed >= min_disk_time:
                os.makedirs(folder, 0o755, exist_ok=True)
                with open(filepath, "wb") as f:
                    pickle.dump(result, f)
            return result

        return functools.update_wrapper(decorated, fn)

    return decorator
