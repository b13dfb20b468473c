"""Request and response schemas for the service endpoints.

Field names appear in JSON as camelCase; snake_case is accepted on
input too so in-process callers can pass plain keyword dicts.
"""

from __future__ import annotations

from typing import Any

from pydantic import BaseModel, ConfigDict, Field


def _camel(name: str) -> str:
    head, *rest = name.split("_")
    return head + "".join(part.capitalize() for part in rest)


class _Schema(BaseModel):
    model_config = ConfigDict(alias_generator=_camel, populate_by_name=True)


class DiagramSource(_Schema):
    """A diagram given inline as PD text or by bundled-catalog name."""

    pd: str | None = None
    name: str | None = None
    free_loops: int = 0
    catalog: str | None = None


class ComputeRequest(DiagramSource):
    algebra: str = "generic"
    memoize: bool = False
    parallel: bool = False
    trace_depth: int | None = None
    reverse: list[int] = Field(default_factory=list)
    mirror: bool = False


class AxiomsRequest(_Schema):
    algebra: str = "generic"
    n_max: int = 10


class FuzzRequest(DiagramSource):
    algebra: str = "generic"
    trials: int = 50
    seed: int = 20260823


class VerifyRequest(_Schema):
    catalog: str | None = None
    algebra: str = "generic"
    mirror_retry: bool = False


class SeriesRequest(DiagramSource):
    crossing: int | None = None
    cutoff: int = 4


class HomflyptRequest(DiagramSource):
    pass


class Envelope(_Schema):
    """One self-contained response record per invocation."""

    command: str
    algebra: str | None
    payload: Any
    elapsed_ms: float | None
    seed: int | None = None
