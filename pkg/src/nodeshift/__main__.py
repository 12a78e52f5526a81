import sys

from nodeshift.cli import main

sys.exit(main())
