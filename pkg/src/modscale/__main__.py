import sys

from modscale.cli import main

sys.exit(main())
