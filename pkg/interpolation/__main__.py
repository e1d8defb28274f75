import sys

from interpolation.cli import main

sys.exit(main())
