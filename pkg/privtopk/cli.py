__doc__ = 'Command line interface: run experiments, generate instances and run acceptance suites'

import argparse
import json
import os
import sys

from . import alg, common, experiment, instances, settings, verify


def parse_instance(text, m=None, n=None, k=None, seed=None):
    """An instance argument is either a histogram JSON file or family[:key=value,...]

    >>> parse_instance('zipf:s=2', m=50, n=10, seed=3)
    InstanceFamilySpec('zipf', m=50, n=10, k=1, s=2.0, seed=3)
    >>> parse_instance('no_such_file.json')
    Traceback (most recent call last):
     ...
    privtopk.common.BadParams: no such instance file or family: no_such_file.json
    """
    family = text.partition(':')[0]
    if family in instances.FAMILIES:
        return instances.InstanceFamilySpec.parse(text, m=m, n=n, k=k, seed=seed)
    elif os.path.exists(text):
        return text
    raise common.BadParams('no such instance file or family: %s' % text)


def cmd_run(args):
    seed = settings.default_seed if args.seed is None else args.seed
    config = experiment.ExperimentConfig(
        args.algo,
        parse_instance(args.instance, args.m, args.n, args.k, seed),
        k=args.k or 1,
        epsilon=args.eps,
        trials=args.trials,
        seed=seed,
        output=args.out,
        noise_kind=args.noise,
        num_threads=args.threads or settings.num_threads,
        timing=not args.no_timing,
    )
    rows, summary = experiment.run_experiment(config)
    return 0 if len(rows) == config.trials else 2


def cmd_gen(args):
    spec = parse_instance(args.instance, args.m, args.n, args.k, args.seed)
    if not isinstance(spec, instances.InstanceFamilySpec):
        raise common.BadParams('gen needs an instance family, not a file: %s' % args.instance)
    h = spec.generate()
    if args.out and args.out != '-':
        h.save(args.out)
        common.logger.info('Saved %s instance with m=%d to %s' % (spec.family, h.m, args.out))
    else:
        json.dump(h.to_json(), sys.stdout)
        sys.stdout.write('\n')
    return 0


def cmd_verify(args):
    seed = settings.default_seed if args.seed is None else args.seed
    checks = verify.run_suite(args.suite, seed=seed, scale=args.scale)
    passed = verify.report(checks, sys.stdout)
    return 0 if passed else 1


def build_parser():
    parser = argparse.ArgumentParser(prog='privtopk', description=__doc__)
    subparsers = parser.add_subparsers(dest='command', required=True)

    def add_common(p):
        p.add_argument('--m', type=int, help='number of items for generated instances')
        p.add_argument('--n', type=int, help='number of clients for generated instances')
        p.add_argument('--k', type=int, help='number of items to select')
        p.add_argument('--seed', type=int, help='master seed, default %d' % settings.default_seed)
        p.add_argument('--out', help='output file, stdout when omitted')

    run = subparsers.add_parser('run', help='run independent trials and write one CSV row per trial')
    add_common(run)
    run.add_argument('--algo', choices=alg.ALGORITHMS, default='privta_lazy')
    run.add_argument('--instance', default='zipf', help='histogram JSON file or family[:key=value,...]')
    run.add_argument('--eps', type=float, default=1.0, help='privacy parameter, noise scale is 1/eps')
    run.add_argument('--noise', choices=('laplace', 'gumbel'), default='gumbel', help='noise of the private threshold algorithm')
    run.add_argument('--trials', type=int, default=1)
    run.add_argument('--threads', type=int, help='worker threads, default PRIVTOPK_THREADS or the CPU count')
    run.add_argument('--no-timing', action='store_true', help='write wall_time_ns as 0 for byte identical output')
    run.set_defaults(fn=cmd_run)

    gen = subparsers.add_parser('gen', help='generate an instance and write it as histogram JSON')
    add_common(gen)
    gen.add_argument('--instance', required=True, help='family[:key=value,...], one of %s' % ', '.join(instances.FAMILIES))
    gen.set_defaults(fn=cmd_gen)

    check = subparsers.add_parser('verify', help='run an acceptance suite and print PASS/FAIL per check')
    check.add_argument('--suite', choices=sorted(verify.SUITES) + ['all'], default='all')
    check.add_argument('--seed', type=int)
    check.add_argument('--scale', type=float, default=1.0, help='multiply every sample size by this factor')
    check.set_defaults(fn=cmd_verify)
    return parser


def main(argv=None):
    """Parse the arguments and run the command, returning the exit code

    >>> import tempfile
    >>> tmp = tempfile.mkdtemp()
    >>> path = os.path.join(tmp, 'zipf.json')
    >>> main(['gen', '--instance', 'zipf:s=1', '--m', '3', '--n', '6', '--out', path])
    0
    >>> sorted(json.load(open(path))['scores'], reverse=True)
    [6, 3, 2]
    >>> main(['gen', '--instance', 'both_access_hard', '--m', '100', '--n', '9', '--k', '4', '--out', path])
    0
    >>> scores = json.load(open(path))['scores']
    >>> scores.count(9), scores.count(8), scores.count(0)
    (15, 5, 80)
    >>> main(['gen', '--instance', 'zipf', '--m', '3', '--k', '4', '--out', path])
    2
    >>> with open(path, 'w') as fp:
    ...     fp.write('[1, 4]')
    6
    >>> main(['run', '--algo', 'threshold_exact', '--instance', path, '--out', os.path.join(tmp, 'bad.csv')])
    2
    >>> out1, out2 = os.path.join(tmp, 'a.csv'), os.path.join(tmp, 'b.csv')
    >>> for out in out1, out2:
    ...     main(['run', '--algo', 'privta_lazy', '--instance', 'zipf', '--m', '500', '--k', '3', '--trials', '4', '--seed', '7', '--no-timing', '--out', out])
    0
    0
    >>> open(out1).read() == open(out2).read()
    True
    >>> open(out1).readline().strip() == ','.join(settings.csv_columns)
    True
    >>> json.load(open(out1 + '.summary.json'))['trials_done']
    4
    >>> main(['run', '--algo', 'threshold_exact', '--instance', 'uniform_random', '--m', '50', '--k', '5', '--trials', '3', '--out', out1])
    0
    >>> [line.split(',')[10] for line in open(out1).read().splitlines()[1:]]
    ['0', '0', '0']
    """
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (common.PrivTopKError, OSError, ValueError) as e:
        common.logger.error('%s: %s' % (args.command, e))
        return 2


if __name__ == '__main__':
    sys.exit(main())
