__doc__ = 'default application wide settings'

import os
import logging


# default location to store log and status files
state_dir = os.environ.get('PRIVTOPK_STATE_DIR', '.privtopk')
log_file = os.path.join(state_dir, 'privtopk.log') # default logging file
log_level = logging.INFO # logging level for the console
log_maxbytes = 64*1024*1024 # rotate the log file after this size

# worker threads used to run independent trials
num_threads = int(os.environ.get('PRIVTOPK_THREADS') or os.cpu_count() or 1)
status_timeout = 10 # seconds between saving the status file

default_seed = 1
significance = 0.001 # acceptance suites pass when p > significance
accuracy_constant = 3.0 # c in alpha = c * ln(m / beta) / eps, calibrated for the accuracy suite

# rejection oracle for conditional order statistics
rejection_batch = 100000 # rows of uniforms drawn per batch
rejection_min_draws = 1000000 # draws before the acceptance rate is judged
rejection_min_rate = 1e-6

# universes up to 2**leaf_bits are held in a single bitmask by the predecessor structure
leaf_bits = 6

# stable CSV contract for the run command, extra columns are only ever appended
csv_columns = [
    'trial_id', 'm', 'n', 'k', 'epsilon', 'algorithm',
    'access_cost_L1', 'access_cost_total', 'wall_time_ns',
    'returned_items', 'error_alpha', 'noise_samples'
]
