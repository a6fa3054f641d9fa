"""Allow ``python -m homkk``."""

from homkk.cli import main

raise SystemExit(main())
