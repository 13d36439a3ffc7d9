"""Shadow theory: the dimension-9 example, the transformation law and the bounds."""
from spherepack import catalog
from spherepack.errors import PrecisionError
from spherepack.qseries import QSeries
from spherepack.shadow import (express_theta_unimodular, extremal_bound, legacy_bound,
                               nonexistence_certificate, reconstruct, shadow,
                               shadow_theta_from_ring, shadow_transform_check)


def main():
    expr = express_theta_unimodular(QSeries({0: 1}, 2), 9)
    print("n = 9, mu >= 2: coefficients", [str(c) for c in expr.coeffs])
    print("theta :", reconstruct(expr, 4))
    print("shadow:", shadow_theta_from_ring(expr, 5))
    cert = nonexistence_certificate(9, 2)
    print("verdict:", cert.verdict, "first bad term", cert.offending)

    print("\nshadow of Z^3:", shadow(catalog.get("Z3"), 6).series)

    for name in ("Z1", "Z9", "E8"):
        for z in (1j, 2j):
            try:
                dev = shadow_transform_check(catalog.get(name), [z])
                print(f"{name} z={z}: deviation {dev:.2e}")
            except PrecisionError as exc:
                print(f"{name} z={z}: {exc}")

    print("\n n  legacy  even  odd")
    for n in (8, 16, 22, 23, 24, 32, 47, 48):
        print(f"{n:2d}  {legacy_bound(n):6d}  {extremal_bound(n, 'even'):4d}  "
              f"{extremal_bound(n, 'odd'):3d}")
    for n, mu in ((23, 4), (24, 3), (12, 2)):
        print(f"odd unimodular n={n}, mu>={mu}:", nonexistence_certificate(n, mu).verdict)


if __name__ == "__main__":
    main()
