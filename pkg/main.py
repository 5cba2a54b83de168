"""Run the benchmark harness: python main.py --data paper-example"""

import sys

from app.cli import main

if __name__ == "__main__":
    sys.exit(main())
