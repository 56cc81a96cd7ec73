# utils
from __future__ import absolute_import
import os
import io
import errno
import tempfile
from contextlib import contextmanager


class FepStatError(Exception):
    pass


class DomainError(FepStatError, ValueError):
    pass


class DegenerateSampleError(DomainError):
    pass


class ConvergenceError(FepStatError, ArithmeticError):
    pass


class InapplicableMethodError(FepStatError):
    pass


class ConfigError(FepStatError):
    pass


class DataFormatError(FepStatError):

    def __init__(self, msg, path=None, lineno=None):
        self.path = path
        self.lineno = lineno
        if lineno is not None:
            msg = '%s:%d: %s' % (path or '<input>', lineno, msg)
        elif path is not None:
            msg = '%s: %s' % (path, msg)
        FepStatError.__init__(self, msg)



def mkdir_p(path):
    """like `mkdir -p`"""
    if path and not os.path.isdir(path):
        try:
            os.makedirs(path)
        except OSError as e:
            if e.errno != errno.EEXIST:
                raise


@contextmanager
def atomic_file(filename, mode='w', newline=None):
    """Yield a temporary file beside `filename`; it replaces `filename` only
    when the block finishes without raising.
    """
    folder = os.path.dirname(filename)
    mkdir_p(folder)
    fd, scratch = tempfile.mkstemp(prefix='.%s.' % os.path.basename(filename),
                                   suffix='.tmp', dir=folder or '.')
    try:
        with io.open(fd, mode, newline=newline) as f:
            yield f
        os.chmod(scratch, 0o644)
        os.rename(scratch, filename)
        scratch = None
    finally:
        if scratch is not None and os.path.exists(scratch):
            os.remove(scratch)
