"""Allow ``python -m hardybench``."""

import sys

from .cli import main

sys.exit(main())
