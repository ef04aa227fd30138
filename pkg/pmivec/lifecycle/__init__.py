from pmivec.lifecycle.observability import (
    enable_tracing,
    disable_tracing,
    StageEvent,
    add_listener,
    remove_listener,
    emit_event,
    get_events,
    clear_events,
    track_stage,
)

__all__ = [
    "enable_tracing",
    "disable_tracing",
    "StageEvent",
    "add_listener",
    "remove_listener",
    "emit_event",
    "get_events",
    "clear_events",
    "track_stage",
]
