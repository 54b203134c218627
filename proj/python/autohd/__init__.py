"""Heuristic-discovery planning engine.

Thin dict-based wrappers over the native module; records and results are
plain dicts matching the JSONL dataset formats.
"""

import json as _json

try:
    from autohd import _autohd as _native  # installed package layout
except ImportError:  # pragma: no cover - build-tree layout
    import _autohd as _native

__version__ = _native.__version__

builtin_names = _native.builtin_names
builtin_source = _native.builtin_source
render_prompt = _native.render_prompt
prompt_template_names = _native.prompt_template_names


def solve(domain, record, heuristic="zero", algorithm="astar", num_solutions=1,
          budget=-1, depth_cap=0, move_set="full18"):
    return _json.loads(_native.solve_json(domain, _json.dumps(record), heuristic,
                                          algorithm, num_solutions, budget, depth_cap,
                                          move_set))


def oracle(domain, record, cap=0, move_set="full18"):
    return _json.loads(_native.oracle_json(domain, _json.dumps(record), cap, move_set))


def gen_dataset(domain, spec, seed=0):
    return [_json.loads(line) for line in
            _native.gen_dataset_json(domain, _json.dumps(spec), seed)]


def validate(domain, record, actions, move_set="full18"):
    return _json.loads(_native.validate_json(domain, _json.dumps(record), list(actions),
                                             move_set))


def heuristic_value(domain, record, heuristic):
    return _json.loads(_native.heuristic_value_json(domain, _json.dumps(record), heuristic))


def parse_heuristic(source, domain):
    return _json.loads(_native.parse_heuristic_json(source, domain))


def evolve_stub(domain, validation, b=4, generations=5, seed=0):
    records = [_json.dumps(record) for record in validation]
    return _json.loads(_native.evolve_stub_json(domain, records, b, generations, seed))
