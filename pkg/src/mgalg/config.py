'''Runtime limits and the parallel map helper.

All results are independent of the parallelism level: work is split into
contiguous blocks whose results are merged in block order.
'''

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

from .errors import InvalidInput

PARALLELISM_ENV = 'MG_MAX_PARALLELISM'


@dataclass(frozen=True)
class Config:
    enumeration_cap: int = 8      # largest carrier size enumerate_algebras accepts
    space_scan_bound: int = 20    # exhaustive space validation up to this many points
    free_rank_cap: int = 2        # largest rank with a materialized presentation
    allow_rank_3: bool = False    # experimental rank-3 presentations
    materialize_cap: int = 4096   # largest algebra built eagerly from a presentation
    parallelism: int = 1

    def with_overrides(self, **kw):
        return replace(self, **kw)


def config_from_env(**overrides):
    '''Build a Config, honouring the parallelism environment variable.'''
    raw = os.environ.get(PARALLELISM_ENV)
    parallelism = 1
    if raw is not None and raw.strip():
        try:
            parallelism = int(raw)
        except ValueError:
            raise InvalidInput(f'{PARALLELISM_ENV} must be an integer, got {raw!r}')
        if parallelism < 1:
            raise InvalidInput(f'{PARALLELISM_ENV} must be at least 1, got {parallelism}')
    cfg = Config(parallelism=parallelism)
    return cfg.with_overrides(**overrides) if overrides else cfg


DEFAULT_CONFIG = Config()


def parallel_map(fn, items, parallelism=1):
    '''Order-preserving map; uses a thread pool when parallelism > 1.'''
    items = list(items)
    if parallelism <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=min(parallelism, len(items))) as pool:
        return list(pool.map(fn, items))
