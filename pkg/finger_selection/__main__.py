"""Allow ``python -m finger_selection``."""

from finger_selection.cli import app

app(prog_name="finger-selection")
