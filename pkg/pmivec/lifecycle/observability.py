from __future__ import annotations

import logging
import time
from collections.abc import Iterator
from contextlib import contextmanager
from dataclasses import dataclass, field
from typing import Any, Callable

logger = logging.getLogger("pmivec")


@dataclass(frozen=True)
class StageEvent:
    """Represents a single pipeline stage (or training epoch) for tracing."""

    stage: str
    duration_ms: float = 0.0
    metrics: dict[str, Any] = field(default_factory=dict)


class _ObservabilityState:
    """Global mutable state for observability."""

    def __init__(self) -> None:
        self.enabled: bool = False
        self.slow_stage_threshold_ms: float = 60_000.0
        self.listeners: list[Callable[[StageEvent], Any]] = []
        self.events: list[StageEvent] = []
        self.capture_events: bool = False


_state = _ObservabilityState()


def enable_tracing(slow_stage_ms: float = 60_000.0, capture_events: bool = False) -> None:
    """Enable stage tracing and observability."""
    _state.enabled = True
    _state.slow_stage_threshold_ms = slow_stage_ms
    _state.capture_events = capture_events


def disable_tracing() -> None:
    """Disable tracing and clear all state."""
    _state.enabled = False
    _state.slow_stage_threshold_ms = 60_000.0
    _state.listeners.clear()
    _state.events.clear()
    _state.capture_events = False


def get_events() -> list[StageEvent]:
    """Return captured events."""
    return list(_state.events)


def clear_events() -> None:
    """Clear captured events."""
    _state.events.clear()


def add_listener(callback: Callable[[StageEvent], Any]) -> None:
    """Register a listener that receives a StageEvent for each stage."""
    _state.listeners.append(callback)


def remove_listener(callback: Callable[[StageEvent], Any]) -> None:
    """Remove a previously registered listener."""
    _state.listeners.remove(callback)


def emit_event(event: StageEvent) -> None:
    """Emit a stage event: store, log slow stages, notify listeners."""
    if not _state.enabled:
        return

    if _state.capture_events:
        _state.events.append(event)

    if event.duration_ms > _state.slow_stage_threshold_ms:
        logger.warning(
            "Slow stage: %s took %.1fms (threshold: %.1fms)",
            event.stage,
            event.duration_ms,
            _state.slow_stage_threshold_ms,
        )

    for listener in _state.listeners:
        listener(event)

    _try_emit_otel_span(event)


def _try_emit_otel_span(event: StageEvent) -> None:
    """Attempt to emit an OpenTelemetry span if the library is available."""
    try:
        from opentelemetry import trace

        tracer = trace.get_tracer("pmivec")
        with tracer.start_as_current_span(f"pmivec.{event.stage}") as span:
            span.set_attribute("pmivec.stage", event.stage)
            if event.duration_ms:
                span.set_attribute("pmivec.duration_ms", event.duration_ms)
            for key, value in event.metrics.items():
                if isinstance(value, (bool, int, float, str)):
                    span.set_attribute(f"pmivec.{key}", value)
    except ImportError:
        pass


@contextmanager
def track_stage(stage: str, **metrics: Any) -> Iterator[dict[str, Any]]:
    """Context manager that times a stage and emits a StageEvent.

    The yielded dict may be filled with extra metrics by the caller.
    """
    ctx: dict[str, Any] = dict(metrics)
    if not _state.enabled:
        yield ctx
        return

    start = time.perf_counter()
    try:
        yield ctx
    finally:
        duration_ms = (time.perf_counter() - start) * 1000
        emit_event(StageEvent(stage=stage, duration_ms=duration_ms, metrics=ctx))
