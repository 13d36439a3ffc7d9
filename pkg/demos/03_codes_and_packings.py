"""Codes and the packings built from them: P10c and Construction B* in dimension 18."""
from spherepack import codes
from spherepack.constructions import construction_a, construction_bstar, fig3_ordinate
from spherepack.lattice import packing_invariants


def main():
    C = codes.best_code_10()
    print(f"best (10, M, d) code: M = {len(C)}, d = {codes.min_distance(C)}")
    print("distance distribution:", codes.distance_distribution(C))
    P = construction_a(C, name="P10c")
    inv = packing_invariants(P, 4)
    print(f"P10c: min_dist_sq {inv.min_dist_sq}, max kissing {inv.max_kissing}, "
          f"delta {inv.center_density} (5/128 = {5 / 128}), ordinate {fig3_ordinate(P, 4):.6f}")

    G = codes.golay24()
    print("\nGolay weight distribution:", codes.weight_distribution(G))

    Q = codes.qr18()
    D = codes.dual_code(Q)
    print("\nqr18: n = 18, k =", Q.dimension, ", d =", codes.min_distance(Q))
    print("compatibility violations (qr18, dual):",
          len(codes.bstar_compatibility_violations(Q, D, limit=10 ** 6)))
    print("compatibility violations (qr18, qr18):",
          len(codes.bstar_compatibility_violations(Q, Q, limit=10 ** 6)))
    B = construction_bstar(Q, D)
    print("B* packing:", len(B.offsets), "points per cell of 4 D18; enumerating ...")
    inv = packing_invariants(B, 32)
    print(f"B*: min_dist_sq {inv.min_dist_sq}, max kissing {inv.max_kissing}, "
          f"delta {inv.center_density:.6g}, ordinate {fig3_ordinate(B, 32):.6f}")


if __name__ == "__main__":
    main()
