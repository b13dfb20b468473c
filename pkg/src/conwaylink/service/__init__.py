"""HTTP service exposing the invariant engine.

The CLI talks to this app in-process by default; `create_app` also
serves standalone under any ASGI server.
"""

from .app import create_app

__all__ = ["create_app"]
