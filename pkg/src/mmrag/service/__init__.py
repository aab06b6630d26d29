"""HTTP service and config-driven wiring helpers."""

from .app import create_app
from .runtime import (
    backend_from_config,
    load_bundle,
    pipeline_from_config,
    provider_from_config,
    run_index,
    run_ingest,
)

__all__ = [
    "create_app", "provider_from_config", "backend_from_config",
    "run_ingest", "run_index", "load_bundle", "pipeline_from_config",
]
