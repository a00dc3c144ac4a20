import sys

from qradii.cli import main

sys.exit(main())
