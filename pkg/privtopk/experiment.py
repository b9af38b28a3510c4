__doc__ = 'Run independent trials of a top-k algorithm in parallel and record one CSV row per trial'

import collections
import os
import sys
import threading
import time

from . import alg, common, instances, model, settings, stats


class ExperimentConfig:
    """What to run and where to write it

    algorithm:
        one of alg.ALGORITHMS
    instance:
        an InstanceFamilySpec, a Histogram, or the filename of a histogram JSON file
    noise_kind:
        noise of the private threshold algorithm, laplace or gumbel
    timing:
        False records wall_time_ns as 0 so repeated runs give identical bytes

    >>> config = ExperimentConfig('privta_lazy', model.Histogram([5, 9, 1]), k=2, trials=3)
    >>> config.histogram().m, config.trials
    (3, 3)
    >>> ExperimentConfig('privta_lazy', model.Histogram([5, 9, 1]), k=4)
    Traceback (most recent call last):
     ...
    privtopk.common.BadK: k=4 outside [1, 3]
    >>> ExperimentConfig('privta_lazy', model.Histogram([5, 9, 1]), trials=0)
    Traceback (most recent call last):
     ...
    privtopk.common.BadParams: trials must be at least 1: 0
    """
    def __init__(self, algorithm, instance, k=1, epsilon=1.0, trials=1, seed=settings.default_seed, output=None,
            noise_kind='gumbel', num_threads=settings.num_threads, timing=True):
        if algorithm not in alg.ALGORITHMS:
            raise common.BadParams('unknown algorithm: %s' % algorithm)
        if trials < 1:
            raise common.BadParams('trials must be at least 1: %s' % trials)
        if algorithm != 'threshold_exact' and not epsilon > 0:
            raise common.BadParams('epsilon must be positive: %s' % epsilon)
        if noise_kind not in ('laplace', 'gumbel'):
            raise common.BadParams('unknown noise kind: %s' % noise_kind)
        self.algorithm = algorithm
        self.instance = instance
        self.k = k
        self.epsilon = float(epsilon)
        self.trials = trials
        self.seed = seed
        self.output = output
        self.noise_kind = noise_kind
        self.num_threads = num_threads
        self.timing = timing
        self._histogram = None
        common.check_k(k, self.histogram().m)
        if algorithm == 'expmech' and k != 1:
            raise common.BadK('the exponential mechanism selects k=1, not %s' % k)

    def histogram(self):
        """The instance, generated or loaded once
        """
        if self._histogram is None:
            if isinstance(self.instance, model.Histogram):
                self._histogram = self.instance
            elif isinstance(self.instance, instances.InstanceFamilySpec):
                self._histogram = self.instance.generate()
            else:
                self._histogram = model.Histogram.load(self.instance)
        return self._histogram

    @property
    def summary_file(self):
        if self.output and self.output != '-':
            return self.output + '.summary.json'


def run_trial(config, trial_id):
    """Run trial number trial_id on its own random stream and return the CSV row as a dict

    >>> config = ExperimentConfig('threshold_exact', model.Histogram([5, 9, 1, 9]), k=2, timing=False)
    >>> row = run_trial(config, 0)
    >>> row['returned_items'] == {2, 4}, row['error_alpha'], row['access_cost_L1'], row['wall_time_ns']
    (True, 0, 2, 0)
    """
    h = config.histogram()
    rng = common.trial_rng(config.seed, trial_id)
    start = time.perf_counter_ns()
    outcome = alg.run_algorithm(config.algorithm, h, config.k, config.epsilon, rng, config.noise_kind)
    wall_time_ns = time.perf_counter_ns() - start if config.timing else 0
    return {
        'trial_id': trial_id,
        'm': h.m,
        'n': h.n,
        'k': config.k,
        'epsilon': config.epsilon,
        'algorithm': config.algorithm,
        'access_cost_L1': outcome.access_cost,
        'access_cost_total': outcome.access_cost_total,
        'wall_time_ns': wall_time_ns,
        'returned_items': outcome.items,
        'error_alpha': model.error_alpha(h, outcome.items, config.k),
        'noise_samples': outcome.noise_samples,
    }


class Summary:
    """Save the progress of an experiment to disk

    output_file:
        where to save the JSON, nothing is written when None
    timeout:
        how many seconds to wait between saving progress
    """
    def __init__(self, config, output_file=None, timeout=settings.status_timeout):
        self.config = config
        self.output_file = output_file
        self.timeout = timeout
        self.trials_done = self.num_errors = 0
        self.data = {}
        self.start_time = time.time()
        self.last_time = 0
        # a lock to prevent multiple threads writing at once
        self.lock = threading.Lock()

    def update(self, trials_done=0, num_errors=0):
        with self.lock:
            self.trials_done += trials_done
            self.num_errors += num_errors
            self.data['trials_done'] = self.trials_done
            self.data['num_errors'] = self.num_errors
            if self.output_file and time.time() - self.last_time > self.timeout:
                self.save()

    def finish(self, rows):
        """Add the statistics over all completed trials and save
        """
        h = self.config.histogram()
        for column in 'access_cost_L1', 'access_cost_total', 'error_alpha', 'noise_samples':
            mean, se = stats.mean_and_se([row[column] for row in rows]) if rows else (None, None)
            self.data['mean_' + column] = mean
            self.data['se_' + column] = se
        self.data.update(
            algorithm=self.config.algorithm, m=h.m, n=h.n, k=self.config.k, epsilon=self.config.epsilon,
            seed=self.config.seed, trials=self.config.trials,
            access_cost_bound=alg.access_cost_bound(h.m, self.config.k),
            max_error_alpha=max(row['error_alpha'] for row in rows) if rows else None,
        )
        with self.lock:
            self.data['trials_done'] = self.trials_done
            self.data['num_errors'] = self.num_errors
            if self.output_file:
                self.save()
        return self.data

    def save(self):
        """Save summary to disk
        """
        self.last_time = time.time()
        self.data['duration_secs'] = int(self.last_time - self.start_time) if self.config.timing else 0
        common.save_json(self.data, self.output_file)


def threaded_run(config, summary=None, num_threads=None):
    """Run all trials of config with a pool of worker threads

    Each trial depends only on (seed, trial_id), so the rows do not depend on the number of threads.
    Rows are returned ordered by trial_id, a trial that raised is logged and left out.

    >>> config = ExperimentConfig('privta_lazy', instances.InstanceFamilySpec('zipf', 200, 50, k=3, seed=2), k=3, trials=6, timing=False)
    >>> rows = threaded_run(config, num_threads=3)
    >>> [row['trial_id'] for row in rows], rows == threaded_run(config, num_threads=1)
    ([0, 1, 2, 3, 4, 5], True)
    """
    summary = summary or Summary(config)
    num_threads = num_threads or config.num_threads
    trial_queue = collections.deque(range(config.trials))
    results = {}

    def process_queue():
        """Thread for running trials
        """
        while True:
            try:
                trial_id = trial_queue.popleft()
            except IndexError:
                break
            else:
                try:
                    results[trial_id] = run_trial(config, trial_id)
                except Exception:
                    # keep the thread alive for the remaining trials
                    common.logger.exception('Trial %d failed' % trial_id)
                    summary.update(num_errors=1)
                else:
                    summary.update(trials_done=1)

    common.logger.debug('Start %d trials of %s on %d threads' % (config.trials, config.algorithm, num_threads))
    common.start_threads(process_queue, min(num_threads, config.trials))
    return [results[trial_id] for trial_id in sorted(results)]


def run_experiment(config):
    """Run the trials, write the CSV and the summary JSON sidecar, return (rows, summary data)
    """
    summary = Summary(config, config.summary_file)
    rows = threaded_run(config, summary)
    if config.output and config.output != '-':
        dirname = os.path.dirname(config.output)
        if dirname:
            os.makedirs(dirname, exist_ok=True)
        with common.ResultWriter(config.output, header=settings.csv_columns) as writer:
            writer.writerows(rows)
    else:
        writer = common.ResultWriter(sys.stdout, header=settings.csv_columns)
        writer.writerows(rows)
        sys.stdout.flush()
    data = summary.finish(rows)
    common.logger.info('%s: %d/%d trials, mean access cost %s (bound %.1f)' % (
        config.algorithm, len(rows), config.trials, data['mean_access_cost_L1'], data['access_cost_bound']))
    return rows, data
