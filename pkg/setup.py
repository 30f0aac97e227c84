from setuptools import setup, find_packages

from concswap import __version__

setup(
    name='concswap',
    version=__version__,
    description='Average concurrence of entanglement swapping: brute-force oracles and closed forms',
    packages=find_packages(exclude=['tests', 'tests.*']),
    python_requires='>=3.9',
    install_requires=[
        'click==8.0.1',
        'numpy~=1.26.4',
        'pluginbase==1.0.1',
        'scipy~=1.11.4',
    ],
    entry_points={
        'console_scripts': ['concswap=concswap.cli:main'],
    },
)
