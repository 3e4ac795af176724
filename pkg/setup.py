#!/usr/bin/env python3
"""Setup script for PyPI."""

import os
from setuptools import setup

here = os.path.dirname(os.path.realpath(__file__))

with open(os.path.join(here, 'README.rst'), encoding='utf-8') as f:
    long_description = f.read()

# read version from version.py and save in __version__
with open(os.path.join(here, 'src', 'pirrssi', 'version.py')) as f:
    exec(f.read())

setup(
    name='pir-rssi',
    version=__version__,
    description=('Single-server private information retrieval with private '
                 'and non-private side information'),
    long_description=long_description,
    license='MIT',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12',
        'Programming Language :: Python :: Implementation :: CPython',
        'Topic :: Security :: Cryptography',
    ],
    keywords='private information retrieval side information coding',
    packages=['pirrssi'],
    package_dir={'': 'src'},
    python_requires='>=3.8',
    install_requires=[],
    extras_require={
        'test': [
            'coveralls',
            'pytest',
            'pytest-cov',
        ],
        'doc': [
            'numpydoc',
            'Sphinx',
        ],
    },
    entry_points={
        'console_scripts': [
            'pir-rssi=pirrssi.cli:main',
        ]
    },
    test_suite='tests',
)
