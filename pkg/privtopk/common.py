__doc__ = 'Common functions shared by the private top-k modules'

import os
import sys
import csv
import json
import logging
import logging.handlers
import threading

import numpy as np

from . import settings


class PrivTopKError(Exception):
    pass

class Exhausted(PrivTopKError):
    """Every position was already returned by sorted access
    """

class OutOfRange(PrivTopKError, IndexError):
    """Item id or position outside [1, m]
    """

class BadCardinality(PrivTopKError, ValueError):
    pass

class BadK(PrivTopKError, ValueError):
    pass

class BadParams(PrivTopKError, ValueError):
    pass

class DomainError(PrivTopKError, ValueError):
    pass

class BadShape(PrivTopKError, ValueError):
    pass

class BadIndex(PrivTopKError, ValueError):
    pass

class AlreadySampled(PrivTopKError):
    pass

class InfeasibleState(PrivTopKError):
    """Sampled order statistics are not descending in position
    """

class SparseCells(PrivTopKError):
    pass

class TooFew(PrivTopKError):
    pass

class Timeout(PrivTopKError):
    pass


def check_k(k, m):
    """Raise BadK unless 1 <= k <= m

    >>> check_k(2, 3)
    >>> check_k(4, 3)
    Traceback (most recent call last):
     ...
    privtopk.common.BadK: k=4 outside [1, 3]
    """
    if not 1 <= k <= m:
        raise BadK('k=%s outside [1, %d]' % (k, m))


def trial_rng(seed, trial_id=None):
    """Return the numpy generator for this trial

    Streams are spawned from (seed, trial_id) so any trial can be reproduced on its own,
    independent of how many trials ran before it or on which thread.

    >>> a = trial_rng(7, 3).random()
    >>> a == trial_rng(7, 3).random()
    True
    >>> a == trial_rng(7, 4).random()
    False
    """
    if trial_id is None:
        return np.random.default_rng(seed)
    return np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(trial_id,)))


def format_items(items):
    """Semicolon join item ids in ascending order

    >>> format_items({3, 1, 2})
    '1;2;3'
    """
    return ';'.join(str(i) for i in sorted(items))


class ResultWriter:
    """A CSV writer for experiment rows

    file:
        can either be a filename or a file object
    header:
        column names written as the first row
    quoting:
        csv module quoting style to use

    >>> from io import StringIO
    >>> fp = StringIO()
    >>> writer = ResultWriter(fp, header=['a', 'b'])
    >>> writer.writerow([1, None])
    >>> writer.writerow({'a': 0.5, 'b': {2, 1}})
    >>> fp.getvalue().splitlines()
    ['a,b', '1,', '0.5,1;2']
    """
    def __init__(self, file, header=None, quoting=csv.QUOTE_MINIMAL, **argv):
        self.header = header
        if hasattr(file, 'write'):
            self.fp = file
        else:
            self.fp = open(file, 'w', newline='')
        self.writer = csv.writer(self.fp, quoting=quoting, lineterminator='\n', **argv)
        if header:
            self.writer.writerow(header)

    def __enter__(self):
        return self

    def __exit__(self, *args):
        self.close()

    def _cell(self, s):
        """Normalize the content for this cell
        """
        if s is None:
            return ''
        elif isinstance(s, (set, frozenset)):
            return format_items(s)
        elif isinstance(s, float):
            return repr(float(s))
        return str(s)

    def writerow(self, row):
        """Write row to output, a dict row is ordered by the header
        """
        if isinstance(row, dict):
            row = [row.get(column) for column in self.header]
        self.writer.writerow([self._cell(col) for col in row])

    def writerows(self, rows):
        for row in rows:
            self.writerow(row)

    def flush(self):
        """Flush output to disk
        """
        self.fp.flush()
        if hasattr(self.fp, 'fileno'):
            try:
                os.fsync(self.fp.fileno())
            except (OSError, ValueError):
                pass # not a real file

    def close(self):
        self.flush()
        self.fp.close()


def save_json(data, output_file):
    """Save data as JSON so the file on disk is never partially written
    """
    text = json.dumps(data, indent=2, sort_keys=True)
    tmp_file = '%s.%d' % (output_file, os.getpid())
    with open(tmp_file, 'w') as fp:
        fp.write(text)
        fp.flush()
    # atomic on POSIX and Windows
    os.replace(tmp_file, output_file)


def start_threads(fn, num_threads=settings.num_threads, args=(), wait=True):
    """Shortcut to start these threads with given args and wait for all to finish
    """
    threads = [threading.Thread(target=fn, args=args, daemon=True) for i in range(max(1, num_threads))]
    for thread in threads:
        thread.start()
    if wait:
        for thread in threads:
            thread.join()
    return threads


class ConsoleHandler(logging.StreamHandler):
    """Log to stderr, looked up at emit time so redirected streams are honoured
    Stdout is kept for reports
    """
    def __init__(self):
        logging.StreamHandler.__init__(self)
        self.stream = None

    def emit(self, record):
        self.stream = sys.stderr
        logging.StreamHandler.emit(self, record)


def get_logger(output_file, level=settings.log_level, maxbytes=0):
    """Create a logger instance

    output_file:
        file where to save the log
    level:
        the minimum logging level to show on the console
    maxbytes:
        the maxbytes allowed for the log file size. 0 means no limit.
    """
    logger = logging.getLogger('privtopk')
    # avoid duplicate handlers
    if not logger.handlers:
        logger.setLevel(logging.DEBUG)
        logger.propagate = False
        try:
            dirname = os.path.dirname(output_file)
            if dirname:
                os.makedirs(dirname, exist_ok=True)
            if not maxbytes:
                file_handler = logging.FileHandler(output_file, delay=True)
            else:
                file_handler = logging.handlers.RotatingFileHandler(output_file, maxBytes=maxbytes, delay=True)
        except OSError:
            pass # can not write file
        else:
            file_handler.setFormatter(logging.Formatter('%(asctime)s %(levelname)s %(message)s'))
            logger.addHandler(file_handler)

        console_handler = ConsoleHandler()
        console_handler.setLevel(level)
        logger.addHandler(console_handler)
    return logger
logger = get_logger(settings.log_file, maxbytes=settings.log_maxbytes)
