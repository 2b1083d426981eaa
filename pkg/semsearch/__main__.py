import sys

from semsearch.cli import main

sys.exit(main())
