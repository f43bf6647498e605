"""Entry point for ``python -m switchdwell``."""

import sys

from .cli import main

sys.exit(main())
