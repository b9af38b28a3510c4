import os
from setuptools import setup

def read(filename):
    return open(os.path.join(os.path.dirname(__file__), filename)).read()

setup(
    name='privtopk',
    version='0.1.0',
    packages=['privtopk'],
    description='Private top-k selection with lazily sampled noise and sublinear access cost',
    long_description=read('README.rst'),
    install_requires=['numpy>=1.22', 'scipy>=1.11'],
    extras_require={'test': ['pytest']},
    entry_points={'console_scripts': ['privtopk=privtopk.cli:main']},
    python_requires='>=3.8',
    classifiers = [
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: GNU Library or Lesser General Public License (LGPL)',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Topic :: Security',
        'Topic :: Scientific/Engineering :: Mathematics'
    ],
    license='lgpl'
)
