"""HTTP service exposing categorized documentation and augmentation."""
from .app import create_app
from .config import ServiceConfig

__all__ = ["ServiceConfig", "create_app"]
