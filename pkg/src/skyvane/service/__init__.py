"""HTTP service surface: FastAPI app plus request/response schemas."""

from .app import app, handle_detect, handle_render, handle_simulate, handle_summarize

__all__ = ["app", "handle_detect", "handle_render", "handle_simulate", "handle_summarize"]
