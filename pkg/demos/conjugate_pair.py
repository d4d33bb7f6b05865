"""Conjugate-pair construction for four qutrits, lambda = [3,1] with its transpose [2,1,1].

Prints the representation matrices on adjacent transpositions, the intertwiner
relating the two irreps, and a few states built from different coefficient
vectors.

Run: python demos/conjugate_pair.py
"""
import numpy as np

from parityperm import ParityStateRecipe, build_conjugate_pair, conjugate_pair_basis, verify_parity
from parityperm.partitions import Partition


def show(name, mat):
    print(name)
    print(np.array2string(np.real_if_close(mat), precision=4, suppress_small=True))


def main():
    lam = Partition([3, 1])
    basis = conjugate_pair_basis(4, 3, lam)
    print("seed contents:", basis.plus.content, basis.conj.content)
    for s, mat in basis.rep_matrices.items():
        show(f"D[3,1]{s}", mat)
        show(f"D[2,1^2]{s}", basis.rep_matrices_conj[s])
    show("T", basis.intertwiner)

    exact = build_conjugate_pair(ParityStateRecipe(4, 3, "conjugate_pair", lam), exact=True)
    print("\nphi = e1 (exact):", exact)
    for phi in ([0, 1, 0], [1, 1j, 0], [1, 1, 1]):
        psi = build_conjugate_pair(ParityStateRecipe(4, 3, "conjugate_pair", lam, coefficients=phi))
        print(f"phi = {phi}: valid = {verify_parity(psi).valid}")
    half = build_conjugate_pair(ParityStateRecipe(4, 3, "conjugate_pair", lam), include_minus=False)
    print("[3,1] half only: valid =", verify_parity(half).valid)


if __name__ == "__main__":
    main()
