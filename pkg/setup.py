"""package setup"""

import os

from setuptools import find_packages, setup

__version__ = "0.1.0"


def read(*paths):
    """Build a file path from *paths* and return the contents."""
    with open(os.path.join(*paths), 'r') as f:
        return f.read()


def requirements(path):
    return [line for line in read(path).split('\n') if line.strip()]


setup(
    name="exactcat",
    author="Oliver Berger",
    author_email="diefans@gmail.com",
    description='Check one-sided exact structures on finitely generated'
    ' abelian groups.',
    long_description=read('README.rst'),
    version=__version__,
    classifiers=[
        'Development Status :: 3 - Alpha',
        'License :: OSI Approved :: Apache Software License',
        'Intended Audience :: Science/Research',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
    license='Apache License Version 2.0',
    keywords="exact category conflation inflation deflation abelian group"
    " homological algebra",
    package_dir={'': 'src'},
    packages=find_packages(
        'src',
        exclude=["tests*"]
    ),
    package_data={'exactcat': ['logging.yaml', 'fixtures/*.json']},
    include_package_data=True,
    entry_points={
        'console_scripts': [
            'exactcat=exactcat.scripts:run'
        ],
    },
    install_requires=requirements('requirements.txt'),
    extras_require={
        'dev': requirements('requirements-dev.txt'),
        'docs': requirements('requirements-docs.txt'),
    },
    python_requires='>=3.8',
    zip_safe=False,
)
