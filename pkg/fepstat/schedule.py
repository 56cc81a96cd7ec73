from __future__ import absolute_import
import sys
import time
import signal
import multiprocessing

import psutil
from six.moves import range

import fepstat.conf as conf
from fepstat.utils import FepStatError
from fepstat.utils.log import get_logger, make_progress_bar

logger = get_logger(__name__)

_signals = [
    signal.SIGINT, signal.SIGQUIT, signal.SIGTERM,
    signal.SIGABRT, signal.SIGHUP
]


class TaskEndReason:
    success = 'FINISHED'
    other_failure = 'FAILED'


class Task(object):
    """One slice of work: func(*args, start, stop)."""

    def __init__(self, task_id, func, args, start, stop):
        self.id = task_id
        self.func = func
        self.args = args
        self.start = start
        self.stop = stop

    def run(self):
        return self.func(*(tuple(self.args) + (self.start, self.stop)))

    def __repr__(self):
        return '<Task %d [%d, %d)>' % (self.id, self.start, self.stop)


class TaskFailed(FepStatError):
    pass


def slice_range(total, num_slices):
    """Cut range(total) into num_slices contiguous (start, stop) pieces.

    Every piece but the last has ceil(total / num_slices) items; trailing
    pieces may be empty and are dropped.
    """
    if num_slices <= 0:
        raise ValueError("invalid num_slices %d" % num_slices)
    if total <= 0:
        return []
    n = total // num_slices
    if total % num_slices != 0:
        n += 1
    slices = []
    for i in range(num_slices):
        start, stop = i * n, min(total, i * n + n)
        if start >= stop:
            break
        slices.append((start, stop))
    return slices


def run_task(task):
    logger.debug('Running task %r', task)
    try:
        return task.id, task.run()
    except Exception as e:
        logger.exception('error in task %s', task)
        e.task_id = task.id
        raise


def default_parallelism():
    if conf.PARALLEL:
        return conf.PARALLEL
    return psutil.cpu_count(logical=False) or psutil.cpu_count() or 1


class LocalScheduler(object):
    """Runs tasks one by one in the calling process."""

    parallelism = 1

    def __init__(self):
        self.started = None

    def make_tasks(self, func, args, total, num_slices=None):
        if num_slices is None:
            num_slices = self.parallelism * conf.SLICES_PER_WORKER
        return [Task(i, func, args, start, stop)
                for i, (start, stop) in enumerate(slice_range(total, num_slices))]

    def run(self, func, args, total, num_slices=None):
        """Apply func(*args, start, stop) over slices of range(total).

        Returns the per-slice results in slice order, whatever order the
        slices finished in.
        """
        tasks = self.make_tasks(func, args, total, num_slices)
        if not tasks:
            return []
        self.started = time.time()
        results = self.submit_tasks(tasks)
        logger.info('%d tasks finished in %.1f seconds', len(tasks), time.time() - self.started)
        return [results[t.id] for t in tasks]

    def submit_tasks(self, tasks):
        logger.debug('submit tasks %s in LocalScheduler', tasks)
        results = {}
        for task in tasks:
            tid, result = run_task(task)
            results[tid] = result
            self.progress(len(results), len(tasks))
        return results

    def progress(self, finished, total):
        logger.debug('Task finished (%d/%d) %s', finished, total,
                     make_progress_bar(finished / float(total)))

    def stop(self):
        pass

    def __enter__(self):
        return self

    def __exit__(self, *exc):
        self.stop()


def run_task_in_process(task):
    try:
        return TaskEndReason.success, run_task(task)
    except KeyboardInterrupt:
        sys.exit(0)
    except Exception as e:
        return TaskEndReason.other_failure, (task.id, repr(e))


def _initializer():
    # SIGTERM keeps its default so workers quit on terminate(); everything
    # else is ignored to avoid dead locks inside the pool
    for sig in _signals:
        if sig == signal.SIGTERM:
            signal.signal(sig, signal.SIG_DFL)
        else:
            signal.signal(sig, signal.SIG_IGN)


class MultiProcessScheduler(LocalScheduler):

    def __init__(self, threads=None):
        LocalScheduler.__init__(self)
        self.threads = threads or default_parallelism()
        self.pool = None

    @property
    def parallelism(self):
        return self.threads

    def submit_tasks(self, tasks):
        logger.info('Got %d tasks for %d processes', len(tasks), self.threads)
        results, failures = {}, []
        total = len(tasks)

        def callback(args):
            state, data = args
            if state == TaskEndReason.other_failure:
                logger.warning('task failed: %s', data[1])
                failures.append(data)
                return
            tid, result = data
            results[tid] = result
            self.progress(len(results), total)

        if not self.pool:
            self.pool = multiprocessing.Pool(self.threads, initializer=_initializer)

        pending = [self.pool.apply_async(run_task_in_process, [task], callback=callback)
                   for task in tasks]
        for p in pending:
            p.wait()

        if failures:
            tid, msg = failures[0]
            raise TaskFailed('%d of %d tasks failed, first: task %d: %s'
                             % (len(failures), total, tid, msg))
        return results

    def stop(self):
        if self.pool:
            self.pool.terminate()
            self.pool.join()
            self.pool = None
        logger.debug('process pool stopped')


def create_scheduler(master='local', parallel=None):
    if master == 'local':
        return LocalScheduler()
    if master == 'process':
        return MultiProcessScheduler(parallel)
    raise ValueError('unknown master %r, expected local or process' % (master,))
