"""Exception hierarchy shared across the toolkit.

Two broad branches matter to callers: ``DataError`` for anything wrong with
inputs on disk (episodes, fixtures, rubrics, run directories) and
``BackendError`` for anything wrong with a remote or simulated service.
The CLI maps them to distinct exit codes.
"""


class MotionCapError(Exception):
    """Base class for all toolkit errors."""


class DataError(MotionCapError):
    """Invalid or unreadable input data."""


class BackendError(MotionCapError):
    """A chat or embedding backend failed."""
