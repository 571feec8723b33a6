import sys

from penergy.cli import main

sys.exit(main())
