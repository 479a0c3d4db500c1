"""Entry point for running ipslab as a module: python -m ipslab."""

import sys

from ipslab.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
