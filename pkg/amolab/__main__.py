#!/usr/bin/env python

import sys

from amolab.ui.cli import main as run_cli


def main():
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
