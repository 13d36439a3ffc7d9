"""The Leech lattice from the Golay code and from the Lorentzian lattice II_{25,1}."""
import sys
import time

from spherepack.constructions import (LORENTZ_W, leech_from_golay, leech_from_lorentzian,
                                      lorentz_inner)
from spherepack.isometry import isometry_equivalent
from spherepack.lattice import determinant, is_even, kissing_number, min_norm, theta_series


def main(cutoff=5):
    t0 = time.time()
    A = leech_from_golay()
    print(f"Golay construction: det {determinant(A)}, even {is_even(A)}, "
          f"min norm {min_norm(A)}, kissing {kissing_number(A)}")
    print("w = (0, 1, ..., 24 | 70), w.w =", lorentz_inner(LORENTZ_W, LORENTZ_W))
    B = leech_from_lorentzian()
    print(f"Lorentzian construction: det {determinant(B)}, even {is_even(B)}")
    ta, tb = theta_series(A, cutoff), theta_series(B, cutoff)
    print(f"theta below norm {cutoff}:", {str(k): int(v) for k, v in ta.items()})
    print("series agree:", ta.agrees_with(tb))
    U = isometry_equivalent(A, B)
    print("explicit isometry found:", U is not None)
    print(f"[{time.time() - t0:.0f}s]")


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 5)
