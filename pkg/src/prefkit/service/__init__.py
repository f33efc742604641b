from .app import create_app
from .store import SessionHandle, SessionStore

__all__ = ["create_app", "SessionHandle", "SessionStore"]
