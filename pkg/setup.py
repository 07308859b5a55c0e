#!/usr/bin/env python3
from setuptools import find_packages, setup

EGG = '#egg='
install_requires = []

with open('requirements.txt') as f:
    for line in f.read().splitlines():
        if not line or line.startswith('#'):
            continue
        if line.startswith('git+'):
            if EGG not in line:
                raise Exception('egg specification is required.')
            package_name = line[line.find(EGG) + len(EGG):]
            dependency_link = line[:line.find(EGG)]
            install_requires.append(f"{package_name} @ {dependency_link}")
        else:
            install_requires.append(line)

config = {
    'description': "Separation-logic contracts for instruction set specifications",
    'version': '0.1.0',
    'install_requires': install_requires,
    'extras_require': {'test': ['pytest', 'hypothesis']},
    'python_requires': '>=3.8',
    'packages': find_packages(include=['contractile', 'contractile.*']),
    'package_data': {'contractile': ['fixtures/*']},
    'entry_points': {'console_scripts': ['contractile = contractile.__main__:main']},
    'name': 'contractile'
}

setup(**config)
