"""The three cubic lattices as members of one family, and the m.c.c. Gram over Q(sqrt 2)."""
from spherepack import catalog
from spherepack.isometry import isodual_check, isometry_equivalent
from spherepack.lattice import center_density, determinant, dual, kissing_number
from spherepack.scalar import Scalar


def main():
    cases = [("fcc", 1, 1), ("bcc", 2, 1), ("mcc", Scalar(0, 1), 1)]
    for name, u2, v2 in cases:
        L = catalog.uv_lattice(u2, v2)
        ref = catalog.get(name)
        target = ref.scaled(2) if name == "mcc" else ref
        same = isometry_equivalent(L, target) is not None
        print(f"u^2/v^2 = {u2!s:>8}: det {determinant(L)!s:>10}, kissing {kissing_number(L):2d}, "
              f"delta {center_density(L):.6f}, isometric to {name}: {same}")

    M = catalog.get("mcc")
    print("\nm.c.c. Gram:")
    for row in M.gram:
        print("   ", "  ".join(f"{x!s:>14}" for x in row))
    print("det =", determinant(M))
    U = isodual_check(M)
    print("isodual witness:", U.tolist() if U is not None else None)
    print("dual(fcc) scaled by 4 is bcc:",
          isometry_equivalent(dual(catalog.get("fcc")).scaled(4), catalog.get("bcc")) is not None)


if __name__ == "__main__":
    main()
