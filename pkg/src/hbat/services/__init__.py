"""Networked pieces: auth HTTP server and honeyChecker TCP server."""

from .config import ServiceConfig, load_config

__all__ = ["ServiceConfig", "load_config"]
