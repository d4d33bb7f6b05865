"""Scan (n, d): below ceil(sqrt(n)) no state beats a coin flip, at or above it one state is perfect.

Run: python demos/threshold_scan.py
"""
from parityperm import ParityStateRecipe, build, dmin, feasible_mechanisms, hypothesis_pair, verify_parity
from parityperm.parity_lab import spanning_seeds


def best_seed_helstrom(n, d):
    return max(hypothesis_pair(s).helstrom() for s in spanning_seeds(n, d))


def parity_state(n, d):
    sectors = feasible_mechanisms(n, d)["sectors"]
    if sectors["i"]:
        return ParityStateRecipe(n, d, "self_conjugate", sectors["i"][0])
    return ParityStateRecipe(n, d, "conjugate_pair", sectors["ii"][0])


def main():
    print(f"{'n':>2} {'d':>2} {'dmin':>4}  {'method':<15} {'lambda':<10} success")
    for n in range(2, 6):
        for d in range(1, 4):
            if d**n > 256:
                continue
            if d < dmin(n):
                ps = best_seed_helstrom(n, d)
                print(f"{n:>2} {d:>2} {dmin(n):>4}  {'-':<15} {'-':<10} {ps:.6f} (best of spanning seeds)")
                continue
            recipe = parity_state(n, d)
            psi = build(recipe)
            ok = verify_parity(psi).valid
            ps = hypothesis_pair(psi).helstrom()
            print(f"{n:>2} {d:>2} {dmin(n):>4}  {recipe.method:<15} {recipe.lam.pretty():<10} {ps:.6f}"
                  + ("" if ok else "  (not parity-detecting)"))


if __name__ == "__main__":
    main()
