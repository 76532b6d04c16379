#!/usr/bin/env python3
# -*- coding: utf-8 -*-

import sys
from admlab.admCli import main

"""Script to compute exact potential theory invariants of metrized graphs.

This script provides a CLI front end to the ``admlab`` package: invariants
and checks of reduction graphs, resistances and Green's functions, random
graph sweeps, curve ledgers and Deligne pairing identities.

Supported Features:
-------------------

- Invariants of a graph with every check

    $ admlab invariants samples/dumbbell.graph

- Invariants as JSON, compared with the discrete oracle

    $ admlab invariants samples/circle.graph --oracle --json

- Effective resistance and Green's function

    $ admlab resistance samples/theta.graph vertex:u edge:a@1/2
    $ admlab green samples/circle.graph --source vertex:v --at edge:e@1/2

- Check 200 random graphs

    $ admlab random --count 200 --seed 7 --check all

- Global intersection numbers of a curve

    $ admlab ledger samples/circle.ledger

- Verify the identity catalog with derivations

    $ admlab identities --all --show-derivation

Attributes:
-----------
    ``ADMLAB_THREADS``: int
        Worker processes for sweeps, ledgers and identities

    ``ADMLAB_SEED``: int
        Default master seed of random sweeps

    ``ADMLAB_SEGMENTS``: int
        Default oracle segments per edge

    ``ADMLAB_MAX_DENOMINATOR``: int
        Largest length denominator of random graphs

    ``LOG_LEVEL``: str
        Log level for getting information on stderr
        (DEBUG / INFO / WARNING / ERROR)

"""

if __name__ == '__main__':
    sys.exit(main())
