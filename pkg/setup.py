#!/usr/bin/env python3

from os import path

from setuptools import setup, find_packages

with open(path.join(path.abspath(path.dirname(__file__)), 'README.md')) as f:
    long_description = f.read()

setup(
    name='fractal-approximator',
    version='0.1.0',
    author='Fractal Approximator contributors',
    license='LGPL',
    description='Best collage fit of functions by continuous fractal interpolation functions',
    long_description=long_description,
    long_description_content_type='text/markdown',
    keywords='fractal interpolation IFS collage least-squares approximation command-line CLI',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: GNU Lesser General Public License v3 (LGPLv3)',
        'Operating System :: POSIX',
        'Programming Language :: Python :: 3 :: Only',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    packages=find_packages(exclude=['examples', 'tests']),
    scripts=[
        'bin/fractal-approximator'
    ],
    python_requires='>=3.6',
    install_requires=[
        'jinja2',
        'numpy',
        'ruamel.yaml',
        'scipy',
    ],
    extras_require={
        'test': ['hypothesis', 'pytest'],
    },
    include_package_data=True,
    zip_safe=False,
    platforms=['POSIX'],
)
