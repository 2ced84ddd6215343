# Runtime settings read from the environment.

import os

from fdr_forge.errors import ConfigurationError

THREADS_ENV = "FDR_FORGE_THREADS"
SIGMA_MARGIN = 3.0


def resolve_threads(threads: int | None = None) -> int:
    # Explicit value wins, then FDR_FORGE_THREADS, then 1.
    if threads is None:
        raw = os.environ.get(THREADS_ENV, "1")
        try:
            threads = int(raw)
        except ValueError as exc:
            raise ConfigurationError(f"{THREADS_ENV} must be an integer, got {raw!r}") from exc
    if threads < 1:
        raise ConfigurationError(f"thread count must be >= 1, got {threads}")
    return threads
