#!/usr/bin/env python
# -*- coding: utf-8 -*-

from setuptools import setup

setup(
    name='flag-geometry',
    version='1.0.0',
    keywords=['finite geometry', 'flag geometry', 'line spread',
              'geometric hyperplane'],
    license='LICENSE.txt',
    description='exact constructions and verification checks for the '
                'point-hyperplane flag geometry of PG(n, q).',
    long_description=open('README.rst').read(),
    zip_safe=False,
    python_requires='>=3.5',
    install_requires=["typing; python_version <= '3.5'", 'numpy>=1.17'],
    packages=['libflaggeom'],
    entry_points={
        'console_scripts': [
            'flag-geometry = libflaggeom.cli:flag_geometry'
        ]
    },
    classifiers=[
        "Development Status :: 4 - Beta",
        "License :: OSI Approved :: University of Illinois/NCSA Open Source License",
        "Environment :: Console", "Operating System :: POSIX",
        "Operating System :: MacOS :: MacOS X",
        "Intended Audience :: Science/Research",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.5",
        "Programming Language :: Python :: 3.6",
        "Programming Language :: Python :: 3.7",
        "Topic :: Scientific/Engineering :: Mathematics"
    ])
