"""Allow running the CLI as ``python -m skillgap``."""

import sys

from .cli import main

sys.exit(main())
