#!/usr/bin/python
# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

import os
import sys
import re

from setuptools import setup, Command
from setuptools.errors import OptionError


class CoverageCommand(Command):
    description = "run the unit tests under coverage, write an HTML report"
    user_options = [
        ("slow", None, "include the long acceptance scale tests"),
    ]

    def initialize_options(self):
        self.slow = False

    def finalize_options(self):
        self.slow = bool(self.slow)

    def run(self):
        try:
            import coverage
        except ImportError:
            print("coverage is not installed, see "
                  "https://pypi.org/project/coverage/")
            return

        # modules imported before start() would be missed
        for name in [m for m in sys.modules if m.split(".")[0] == "pomapf"]:
            del sys.modules[name]

        cov = coverage.Coverage(source=["pomapf"])
        cov.start()
        import tests
        failures = tests.test(slow=self.slow)
        cov.stop()

        dest = os.path.join(os.getcwd(), "coverage")
        cov.report()
        cov.html_report(directory=dest)
        print("HTML report: file://%s/index.html" % dest)
        exit(failures)


class TestCommand(Command):
    description = "run unit tests"
    user_options = [
        ("filter=", None, "regexp for filter classes"),
        ("exitfirst", "x", "exit instantly on first error or failed test"),
        ("slow", None, "also run the long acceptance scale tests"),
    ]

    def initialize_options(self):
        self.filter = None
        self.exitfirst = False
        self.slow = False

    def finalize_options(self):
        if self.filter:
            try:
                self.filter = re.compile(self.filter)
            except re.error as e:
                raise OptionError("invalid --filter: %s" % e)
        self.exitfirst = bool(self.exitfirst)
        self.slow = bool(self.slow)

    def run(self):
        import tests

        match = self.filter.search if self.filter else None
        exit(tests.test(match, self.exitfirst, self.slow))


class BenchmarkCommand(Command):
    description = "run benchmarks"
    user_options = [
        ("quick", None, "smaller maps and fewer episodes"),
    ]

    def initialize_options(self):
        self.quick = False

    def finalize_options(self):
        self.quick = bool(self.quick)

    def run(self):
        import benchmarks

        exit(benchmarks.run(self.quick))


setup(name='pomapf',
      version='0.1.0',
      description='Multi-agent pathfinding under partial observability '
                  'with incremental planning and shared exploration maps',
      author='The pomapf developers',
      packages=[
         'pomapf',
         'pomapf.policy',
         'pomapf.bench',
      ],
      license='LGPL-2.1+',
      classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: Implementation :: CPython',
      ],
      install_requires=["numpy", "cairocffi"],
      entry_points={
          'console_scripts': ['pomapf = pomapf.cli:main'],
      },
      cmdclass={
            'test': TestCommand,
            'coverage': CoverageCommand,
            'benchmark': BenchmarkCommand,
      },
      python_requires=">=3.8, <4"
     )
