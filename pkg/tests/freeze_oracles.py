"""Regenerate tests/frozen_oracles.json from the sympy/enumeration oracles.

Run once before trusting the engine; the tests compare against the frozen
file so a change in either side shows up as a failure.
"""

import json
from pathlib import Path

import oracles


def compute() -> dict:
    out = {}
    out["snf_2x2"] = oracles.snf_diagonal([[2, 4], [6, 8]])
    out["solve_1"] = oracles.brute_solve([[1, 1], [0, 2]], [3, 4])
    out["solve_mod_parity"] = oracles.brute_solve_modulo([[2]], [[4]], [1])
    out["solve_mod_3"] = oracles.brute_solve_modulo([[2]], [[3]], [1])
    out["diag_2_3"] = list(oracles.invariants(2, [[2, 0], [0, 3]]))
    out["coker_unipotent"] = list(oracles.invariants(2, [[0, 1], [0, 0]]))
    out["sign_action_cohomology"] = [
        list(x) for x in oracles.free_complex_cohomology(
            *oracles.koszul_dual_matrices(2, [[[-2]], [[0]]]))]
    out["unipotent_cohomology"] = [
        list(x) for x in oracles.free_complex_cohomology(
            *oracles.koszul_dual_matrices(1, [[[0, 1], [0, 0]]]))]
    out["six_term_template"] = {
        str(k): [list(g) for g in oracles.six_term_template(k)] for k in range(4)}
    return out


def normalise(obj):
    return json.loads(json.dumps(obj))


if __name__ == "__main__":
    path = Path(__file__).with_name("frozen_oracles.json")
    path.write_text(json.dumps(compute(), indent=2, sort_keys=True) + "\n")
    print(f"wrote {path}")
