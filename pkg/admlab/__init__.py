import os
import logging
import multiprocessing
from admlab.admErrors import InputEncodingError

"""Exact potential theory on metrized graphs.

    ``admlab`` computes admissible Green's functions, canonical measures
    and the epsilon / phi / delta invariants of reduction graphs with exact
    rational arithmetic. It also assembles function-field intersection
    numbers for a curve from its reduction graphs, and verifies Deligne
    pairing identities with a small rewriting engine.

    **List of public available modules:**

    Modules provided by this package
    --------------------------------

    admGraph
        Parse, validate and manipulate metrized graphs.
    admCircuit
        Exact electrical network computations (potentials, resistances).
    admGreen
        Canonical measure, Green's functions and a floating point oracle.
    admInvariants
        Total length, delta, epsilon and phi invariants and their checks.
    admLedger
        Curve ledger with global intersection numbers and bounds.
    admDeligne
        Rewriting engine for Deligne pairing identities.
    admSweep
        Random graph generation and parallel property sweeps.
    admCli
        Command line front end.

    Example (invariants of a dumbbell graph)
    ----------------------------------------

        >>> from admlab.admGraph import parse_graph
        >>> from admlab.admInvariants import run_checks
        >>>
        >>> graph = parse_graph('''
        ... vertex u genus=1
        ... vertex w genus=1
        ... edge b u w length=1
        ... ''')
        >>> report = run_checks(graph)
        >>> report.epsilon, report.phi
        (Fraction(1, 1), Fraction(1, 1))
        >>>
"""


# Code version
__version__ = '0.4.0'

# Author information
__author__ = 'admlab developers'
__email__ = ''
__copyright__ = "Copyright 2026, admlab developers"
__credits__ = ["admlab developers"]
__license__ = "BSD"


def load_constant(key_name, default='UNSET', verbose=False):
    """Set up constant value from OS Environment.

    Help to define CONSTANT from OS Environment.
    If it is not defined, then, fallback to default value
    provided within parameters

    :Example::

    >>> THREADS = load_constant(key_name='ADMLAB_THREADS', default=4)
    >>> print(THREADS)
    4

    Parameters
    ----------
    key_name : string
        VAR to lookup in os.environment
    default : str, optional
        Default value to use if key_name is not defined. By default set to UNSET
    verbose : bool, optional
        Boolean to activate verbose mode

    Returns
    -------
    str
        Value to use to configure variable
    """
    if key_name in os.environ:
        if verbose:
            logging.debug("%s is set to %s", key_name, os.environ.get(key_name))
        return os.environ[key_name]
    if verbose:
        logging.debug('%s is not set - using default (%s)', key_name, str(default))
    return default


# Runtime settings
# Load information from your shell environment (export ADMLAB_THREADS=4)
# If not set, then use default values.
# It can be manually override with CLI option using argparse
ADMLAB = dict()
ADMLAB['THREADS'] = int(load_constant(key_name='ADMLAB_THREADS',
                                      default=multiprocessing.cpu_count()))
ADMLAB['SEED'] = int(load_constant(key_name='ADMLAB_SEED', default=7))
ADMLAB['SEGMENTS'] = int(load_constant(key_name='ADMLAB_SEGMENTS', default=256))
ADMLAB['MAX_DENOMINATOR'] = int(load_constant(key_name='ADMLAB_MAX_DENOMINATOR',
                                              default=8))
LOG_LEVEL = load_constant(key_name='LOG_LEVEL', default='warning')


def file_read(path):
    r"""Read a UTF-8 text file.

    Load content of graph and ledger files. Missing files are logged
    before the error is raised again to the caller.

    Parameters
    ----------
    path : str
        Path to the file to read

    Returns
    -------
    str
        Complete file content

    Raises
    ------
    IOError
        File does not exist or cannot be read
    InputEncodingError
        File is not valid UTF-8
    """
    try:
        logging.debug('loading content from %s', path)
        with open(path, encoding='utf-8') as file_content:
            return file_content.read()
    except IOError:
        logging.critical('!! File not found: %s', path)
        raise
    except UnicodeDecodeError as error:
        raise InputEncodingError('%s is not UTF-8 text (byte %d)' % (path, error.start))
