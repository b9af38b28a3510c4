__doc__ = """
Private top-k selection over sorted and random access lists, with a lazily sampled noise list.

Run the doctests of every module with: python -m privtopk.__init__

License:
    LGPL
"""

if __name__ == '__main__':
    import doctest
    import importlib
    for name in ['settings', 'common', 'adt', 'model', 'noise', 'oracle', 'alg', 'instances', 'stats', 'experiment', 'verify', 'cli']:
        module = importlib.import_module('privtopk.' + name)
        print(name)
        print(doctest.testmod(module, optionflags=doctest.ELLIPSIS | doctest.NORMALIZE_WHITESPACE | doctest.IGNORE_EXCEPTION_DETAIL))
