"""Root lattices: densities, kissing numbers and the E8 coordination sequence."""
import math

from spherepack import catalog
from spherepack.lattice import (center_density, coordination_numerator, coordination_sequence,
                                density, determinant, kissing_number, min_norm)


def main():
    print(f"{'name':8s} {'dim':>3s} {'det':>5s} {'mu':>3s} {'kiss':>5s} {'delta':>10s} {'density':>10s}")
    for name in ("A2", "A3", "D4", "D5", "E6", "E7", "E8"):
        L = catalog.get(name)
        print(f"{name:8s} {L.dim:3d} {str(determinant(L)):>5s} {str(min_norm(L)):>3s} "
              f"{kissing_number(L):5d} {center_density(L):10.6f} {density(L):10.6f}")
    print()
    print("pi/sqrt(12) =", math.pi / math.sqrt(12), " A2:", density(catalog.get("A2")))
    print("pi/sqrt(18) =", math.pi / math.sqrt(18), " A3:", density(catalog.get("A3")))

    E8 = catalog.get("E8")
    seq = coordination_sequence(E8, 3)
    print("E8 coordination sequence:", seq)
    print("numerator over (1-x)^8:  ", coordination_numerator(seq, 8))


if __name__ == "__main__":
    main()
