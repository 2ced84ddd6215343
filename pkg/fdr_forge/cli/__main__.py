import sys

from fdr_forge.cli.main import main

sys.exit(main())
