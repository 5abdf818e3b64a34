# Copyright 2026 The pomapf developers
#
# This library is free software; you can redistribute it and/or
# modify it under the terms of the GNU Lesser General Public
# License as published by the Free Software Foundation; either
# version 2.1 of the License, or (at your option) any later version.

import os
import inspect
import logging
import unittest
import importlib
import faulthandler

faulthandler.enable()


def _detect_cairo():
    try:
        import cairocffi
        cairocffi.ImageSurface(cairocffi.FORMAT_ARGB32, 1, 1)
    except (ImportError, OSError):
        return False
    return True


_has_cairo = _detect_cairo()
_run_slow = os.environ.get("POMAPF_SLOW", "") not in ("", "0")


def skipUnlessCairo(func):
    return unittest.skipUnless(_has_cairo, "not cairo")(func)


def skipUnlessSlow(func):
    """For acceptance scale runs; set POMAPF_SLOW=1 or pass --slow"""

    def check(*args, **kwargs):
        if not _run_slow:
            raise unittest.SkipTest("slow (set POMAPF_SLOW=1)")
        return func(*args, **kwargs)

    check.__name__ = func.__name__
    check.__doc__ = func.__doc__
    return check


def discover(package):
    """TestCase subclasses defined in the test_*.py modules of `package`
    (e.g. "tests.tests_core"), in module order.
    """

    path = os.path.join(os.path.dirname(__file__), package.split(".")[-1])
    found = []
    for entry in sorted(os.listdir(path)):
        if not (entry.startswith("test_") and entry.endswith(".py")):
            continue
        module = importlib.import_module("%s.%s" % (package, entry[:-3]))
        for name, value in inspect.getmembers(module, inspect.isclass):
            if name.startswith("_") or value.__module__ != module.__name__:
                continue
            if issubclass(value, unittest.TestCase):
                found.append(value)
    return found


def test(filter_=None, failfast=False, slow=False):
    """Run the test suite.

    filter_ -- filter for test names (class names)
    slow    -- also run the acceptance scale tests
    """

    global _run_slow

    if slow:
        _run_slow = True

    def headline(text):
        return (("### %s " % text) + "#" * 80)[:80]

    import pomapf
    print(headline("pomapf %s" % pomapf.__version__))

    # only errors, the library logs progress at INFO
    logging.disable(logging.ERROR)

    tests = discover(__name__ + ".tests_core")
    tests += discover(__name__ + ".tests_bench")

    if filter_ is not None:
        tests = filter(lambda t: filter_(t.__name__), tests)

    loader = unittest.TestLoader()
    tests = [loader.loadTestsFromTestCase(t) for t in tests]

    run = unittest.TextTestRunner(
        verbosity=2, failfast=failfast).run(unittest.TestSuite(tests))

    return len(run.failures) + len(run.errors)
