from setuptools import setup, find_packages

with open('README.md', 'r') as file:
    long_description = file.read()

setup(
    name='symptomcast',
    version='0.0.0a0',
    description='Daily COVID-19 case regression from symptom survey '
                'signals, with global and per-state models',
    long_description=long_description,
    long_description_content_type='text/markdown',
    classifiers=[
        'Development Status :: 2 - Pre-Alpha',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'Operating System :: POSIX',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Topic :: Scientific/Engineering'
    ],
    package_dir={'': 'src'},
    packages=find_packages('src', exclude=['pytest_fixtures', '*.tests',
                                           '*.tests.*']),
    python_requires='>=3.8',
    install_requires=['colorama', 'appdirs', 'numpy>=1.20', 'pandas',
                      'scipy'],
    extras_require={
        'test': ['pytest', 'hypothesis']
    },
    entry_points={
        'console_scripts': [
            'symptomcast = symptomcast:main'
        ]
    }
)
