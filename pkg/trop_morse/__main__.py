import sys

from trop_morse.cli.main import main

sys.exit(main())
