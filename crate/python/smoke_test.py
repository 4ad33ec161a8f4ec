#!/usr/bin/env python3
"""Smoke test for the chowpoly_py extension module.

Builds the extension with cargo if needed, loads it from the target
directory, and exercises the main entry points against known values.
"""

import os
import shutil
import subprocess
import sys
import tempfile

REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def load_module():
    lib = os.path.join(REPO_ROOT, "target", "debug", "libchowpoly_py.so")
    if not os.path.exists(lib):
        subprocess.run(
            ["cargo", "build", "-p", "chowpoly-py"],
            cwd=REPO_ROOT,
            check=True,
        )
    staging = tempfile.mkdtemp(prefix="chowpoly-py-")
    shutil.copy2(lib, os.path.join(staging, "chowpoly_py.so"))
    sys.path.insert(0, staging)
    import chowpoly_py

    return chowpoly_py


def main():
    cp = load_module()

    # rank-2 and rank-3 braid arrangement lattices, all methods
    pi2 = cp.partition_lattice(2)
    assert pi2.rank() == 2
    assert pi2.n_elements() == 5
    assert pi2.poincare() == [1, 3, 2]
    for method in ("chains", "descents", "extab"):
        assert pi2.chow(method) == [1, 1], method
        assert pi2.augmented_chow(method) == [1, 4, 1], method
    assert cp.chow_braid(2) == [1, 1]
    assert cp.augmented_chow_braid(2) == [1, 4, 1]

    pi3 = cp.partition_lattice(3)
    for method in ("chains", "descents", "extab"):
        assert pi3.chow(method) == [1, 8, 1], method
        assert pi3.augmented_chow(method) == [1, 14, 14, 1], method
    assert cp.chow_braid(3) == [1, 8, 1]
    assert cp.augmented_chow_braid(3) == [1, 14, 14, 1]
    assert pi3.verify_r_labeling()
    assert pi3.r_labeling_violation() is None
    assert pi3.maximal_chain_count() == 18

    # boolean lattice values and the mobius function
    b3 = cp.boolean_lattice(3)
    assert b3.chow() == [1, 4, 1]
    assert b3.augmented_chow() == [1, 7, 7, 1]
    assert b3.mobius("{}", "{1,2,3}") == -1
    assert b3.characteristic() == [-1, 3, -3, 1]

    # the flats of a uniform matroid, and a hand-built poset
    u23 = cp.uniform_matroid_flats(2, 3)
    assert u23.chow() == [1, 1]
    assert u23.augmented_chow() == [1, 4, 1]

    diamond = cp.Poset(
        ["bot", "l", "r", "top"],
        [("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")],
        {("bot", "l"): 1, ("bot", "r"): 2, ("l", "top"): 2, ("r", "top"): 1},
    )
    assert diamond.verify_r_labeling()
    assert diamond.augmented_chow("descents") == [1, 3, 1]

    # ab-index dictionaries (words map to y-coefficient lists)
    b1 = cp.boolean_lattice(1)
    assert b1.ab_index() == {"a": [1]}
    assert b1.ext_ab_index() == {"a": [1], "b": [0, 1]}
    assert b1.ext_ab_index_truncated() == {"": [1, 1]}

    # bond lattices: complete graph matches the partition lattice, and the
    # 4-cycle's labeling is honestly reported as not an R-labeling
    k4 = cp.bond_lattice(4, [(i, j) for i in range(1, 5) for j in range(i + 1, 5)])
    assert k4.elements() == pi3.elements()
    assert k4.covers() == pi3.covers()
    assert k4.labels() == pi3.labels()

    c4 = cp.bond_lattice(4, [(1, 2), (2, 3), (3, 4), (1, 4)])
    assert not c4.verify_r_labeling()
    assert "weakly increasing" in c4.r_labeling_violation()
    assert c4.chow("chains") == c4.chow("extab") == [1, 7, 1]

    # gamma vectors and shape diagnostics
    assert cp.gamma_vector([1, 14, 14, 1], 3) == [1, 11]
    assert cp.braid_gamma(3, True) == [1, 11]
    assert cp.braid_gamma(3) == [1, 6]
    assert cp.is_palindromic([1, 8, 1], 2)
    assert not cp.is_palindromic([1, 2], 1)
    assert cp.is_unimodal([1, 8, 1])
    assert cp.real_roots_diagnostic([1, 8, 1])
    assert not cp.real_roots_diagnostic([1, 1, 1])

    # chain-label combinatorics on the braid lattice
    assert cp.inversion_sequence([3, 4, 2]) == [2, 2, 1]
    assert cp.inversion_sequence_inverse([2, 2, 1]) == [3, 4, 2]
    assert cp.count_chains_with_label([3, 4, 2]) == 4

    # file round trip
    with tempfile.TemporaryDirectory() as d:
        path = os.path.join(d, "pi3.json")
        pi3.save(path)
        again = cp.load_poset(path)
        assert again.elements() == pi3.elements()
        assert again.labels() == pi3.labels()
        assert again.chow("descents") == [1, 8, 1]

    # errors surface as ValueError
    try:
        cp.partition_lattice(40)
    except ValueError as e:
        assert "cap" in str(e)
    else:
        raise AssertionError("size cap not enforced")

    try:
        b1.chow("magic")
    except ValueError:
        pass
    else:
        raise AssertionError("unknown method not rejected")

    print("smoke test passed")


if __name__ == "__main__":
    main()
