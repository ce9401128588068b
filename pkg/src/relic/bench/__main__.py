import sys

from relic.bench.cli import main

sys.exit(main())
