"""
trop-morse entry point
"""
import sys

from trop_morse.cli.main import main

if __name__ == "__main__":
    sys.exit(main())
