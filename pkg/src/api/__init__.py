"""
FastAPI server and REST endpoints.
"""

from .server import app, main

__all__ = ["app", "main"]
