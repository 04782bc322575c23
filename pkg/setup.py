#!/usr/bin/env python3

from setuptools import setup
import infocus

with open("README.md") as readme_file:
    readme = readme_file.read()

__version__ = infocus.__version__

requirements = [
    "appdirs",
    "numpy",
    "scipy",
    "numba"
]

setup(
    name="infocus",
    version=__version__,
    description="Misfocus-robust wideband near-field beamforming for circular "
                "planar phased arrays",
    long_description=readme,
    author="Sean Leavey",
    packages=[
        "infocus"
    ],
    package_data={
        "infocus": ['infocus.conf.dist']
    },
    python_requires=">=3.9",
    install_requires=requirements,
    extras_require={
        "test": ["pytest"]
    },
    entry_points={
        "console_scripts": [
            "infocus = infocus.cli:main"
        ]
    },
    license="GPLv3",
    zip_safe=False,
    classifiers=[
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: GNU General Public License v3 (GPLv3)",
        "Natural Language :: English",
        "Programming Language :: Python :: 3",
        "Topic :: Scientific/Engineering :: Physics"
    ]
)
