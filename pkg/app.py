#!/usr/bin/env python3
"""
cnpkit - command line entry point

Usage:
    python app.py cnp abbcbbcca
    python app.py adjacency acbdcb abcdabcd
    python app.py mcng abbccabcab 2,4,3 --budget 3
    python app.py verify lemma2 --seed 1 --trials 50

Configuration comes from CNPKIT_* environment variables (or a .env file)
and the optional YAML file named by CNPKIT_CONFIG.
"""

import sys

from cnpkit.cli import main

if __name__ == '__main__':
    sys.exit(main(sys.argv[1:]))
