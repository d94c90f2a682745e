"""
Repo setup file.
"""

from setuptools import find_packages, setup

setup(
    name="untangle",
    version="0.1",
    packages=find_packages(exclude=["tests"]),
    description="Flip-based untangling of red-blue matchings",
    license="MIT",
    install_requires=["smart-open", "mpmath", "networkx"],
    extras_require={"dev": ["pylint", "black", "pytest", "hypothesis"]},
    entry_points={"console_scripts": ["untangle=untangle.cli:run"]},
)
