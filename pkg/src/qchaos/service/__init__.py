"""HTTP service wrapping the core computation package."""

from .app import create_app

__all__ = ["create_app"]
