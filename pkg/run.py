#!/usr/bin/env python3
"""
Run script for the regring command line.

    ./run.py reduce --ring "M2(F2)" --a "0,1,0,0" --b "0,0,1,0"
    ./run.py identities --ring "M3(F2)" --scheme thm23-7 --d 3
"""
import sys

from dotenv import load_dotenv

from regring import main

if __name__ == '__main__':
    load_dotenv()
    sys.exit(main())
