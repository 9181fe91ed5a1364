from .app import COMMANDS, app, create_app

__all__ = ["COMMANDS", "app", "create_app"]
