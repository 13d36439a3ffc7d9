"""Laminated lattices by stacking, and the nine-dimensional fluid family."""
from fractions import Fraction

from spherepack import catalog
from spherepack.constructions import d9_theta_plus, dn_lattice, fig3_ordinate, stack_layer
from spherepack.lattice import center_density, determinant, kissing_number, packing_invariants


def main():
    print("Lambda_n from the catalog:")
    for n in range(1, 11):
        L = catalog.get(f"Lambda{n}")
        print(f"  Lambda{n:<2d} det {determinant(L)!s:>4}  kissing {kissing_number(L):4d}  "
              f"delta {center_density(L):.6f}  ordinate {fig3_ordinate(L):+.4f}")

    print("\nD3 stacked over its hole e_0:")
    L = stack_layer(dn_lattice(3), [1, 0, 0], 2)
    print("  Gram", [[str(x) for x in r] for r in L.gram], "kissing", kissing_number(L))

    print("\nD9^{theta+}:")
    for t in (Fraction(0), Fraction(1, 4), Fraction(1, 3), Fraction(1, 2), Fraction(1)):
        inv = packing_invariants(d9_theta_plus(t), 2)
        print(f"  theta {t!s:>4}: min_dist_sq {inv.min_dist_sq}, kissing {inv.max_kissing:3d}, "
              f"delta {inv.center_density:.9f}")


if __name__ == "__main__":
    main()
