import shutil
from setuptools import setup
from admlab import __version__, __author__, __license__, __email__

# Load list of requirements from req file
with open('requirements.txt') as f:
    REQUIRED_PACKAGES = f.read().splitlines()

# Load description from README file
with open("README.rst", "r") as fh:
    LONG_DESCRIPTION = fh.read()

# Rename Scripts to sync with original name
shutil.copyfile('bin/admlab.py', 'bin/admlab')

# Script version
VERSION = str(__version__)
AUTHOR = str(__author__)
AUTHOR_EMAIL = str(__email__)
LICENSE = str(__license__)

setup(
    name="admlab",
    version=VERSION,
    scripts=["bin/admlab"],
    packages=['admlab'],
    python_requires=">=3.6",
    install_requires=REQUIRED_PACKAGES,
    license=LICENSE,
    author=AUTHOR,
    author_email=AUTHOR_EMAIL,
    description="Exact admissible pairing invariants of metrized graphs and Deligne pairing identities",
    long_description=LONG_DESCRIPTION,
    zip_safe=False,
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3",
        "License :: OSI Approved :: BSD License",
        "Operating System :: OS Independent",
        'Environment :: Console',
        'Natural Language :: English',
        'Topic :: Scientific/Engineering :: Mathematics'
    ]
)
