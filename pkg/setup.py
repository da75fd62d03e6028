#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""The setup script."""

from setuptools import setup, find_packages

with open('README.rst') as readme_file:
    readme = readme_file.read()

with open('HISTORY.rst') as history_file:
    history = history_file.read()

requirements = [
    "numpy>=1.17", "scipy>=1.4"
]

extras_requirements = {
    "plot": ["matplotlib>=3.1"],
}

setup_requirements = [
]

test_requirements = [
    "numpy>=1.17", "scipy>=1.4"
]

setup(
    name='ncretx',
    version='0.1.0',
    description="Coded retransmission for lossy wireless broadcast: closed forms, Monte Carlo and exact chains",
    long_description=readme + '\n\n' + history,
    author="Marco Favorito",
    author_email='marco.favorito@gmail.com',
    packages=find_packages(include=['ncretx*']),
    include_package_data=True,
    install_requires=requirements,
    extras_require=extras_requirements,
    entry_points={
        'console_scripts': [
            'ncretx=ncretx.cli.cli:main',
        ],
    },
    license="MIT license",
    zip_safe=False,
    keywords='ncretx network-coding retransmission arq',
    python_requires='>=3.8',
    classifiers=[
        'Development Status :: 2 - Pre-Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Topic :: System :: Networking',
    ],
    test_suite='tests',
    tests_require=test_requirements,
    setup_requires=setup_requirements,
)
