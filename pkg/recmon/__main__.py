import sys

from recmon.cli.main import main

sys.exit(main())
