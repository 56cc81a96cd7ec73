from setuptools import setup, find_packages

version = '0.1.0'
req = [
    'numpy>=1.17',
    'psutil>=2.0.0',
    'addict',
    'six',
]

setup(name='FepStat',
      version=version,
      description="Confidence intervals for means, variances, variance ratios "
                  + "and mean differences, Gaussian-exact and asymptotic.",
      classifiers=[
          "Programming Language :: Python",
          'Intended Audience :: Science/Research',
          'License :: OSI Approved :: BSD License',
          'Operating System :: POSIX',
          'Topic :: Scientific/Engineering :: Mathematics',
      ],
      keywords='statistics confidence-interval jarque-bera welch monte-carlo',
      license='BSD License',
      packages=find_packages(exclude=('tests', 'tests.*')),
      package_data={'fepstat': ['data/*.txt']},
      include_package_data=True,
      zip_safe=False,
      install_requires=req,
      tests_require=[
          'pytest', 'flaky', 'scipy'
      ],
      entry_points={
          'console_scripts': ['fepstat = fepstat.cli:main'],
      },
      scripts=[
          'tools/fepstat.py',
      ]
      )
