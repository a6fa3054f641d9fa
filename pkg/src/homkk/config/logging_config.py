"""Logging setup for the command-line entry point.

Library modules only create role-tagged adapters; handlers are installed here
(or by pytest, see ``pytest.ini``).
"""

import logging

LOG_FORMAT = "[%(levelname)-8s] [%(role)-15s] %(name)s -> %(message)s"


class DefaultRoleFilter(logging.Filter):
    """Give records from plain loggers (third-party code) a placeholder role."""

    def filter(self, record: logging.LogRecord) -> bool:
        if not hasattr(record, "role"):
            record.role = "-"
        return True


def configure_logging(level: str) -> None:
    """Install a stderr handler using the role-aware format.

    Parameters
    ----------
    level : str
        Name of the root log level, e.g. ``"WARNING"``

    """
    handler = logging.StreamHandler()
    handler.setFormatter(logging.Formatter(LOG_FORMAT))
    handler.addFilter(DefaultRoleFilter())
    logging.basicConfig(level=level, handlers=[handler], force=True)
