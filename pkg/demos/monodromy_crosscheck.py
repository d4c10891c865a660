"""Monodromy predictions versus exact computation on line arrangements.

The predictor reads only combinatorial data: where the curve has cusps
or multicross points and which monodromy eigenvalues the local system
carries along each branch.  The computation knows none of that; it
works with a concrete module over the Weyl algebra.  Running both on
n coordinate-cross lines with three different local systems gives a
nine-entry agreement matrix.
"""

from dxext.curves import cross_check, planar_model
from dxext.hyperext import ext_module_dims
from dxext.models import LineICModule

print("trivial IC tables (Ext^1 level dimensions):")
for n in (2, 3, 4):
    f = planar_model(n)
    _, ext1 = ext_module_dims(LineICModule(n), f, 6)
    print(f"  {n} lines (f = {f}):", [lvl.dim for lvl in ext1.levels])
print()

print("predictor vs computation, 3 x 3 matrix:")
print(f"{'lines':>6} {'model':>12} {'predicted':>12} {'nonzero':>8} {'agree':>6}")
for n in (2, 3, 4):
    for model in ("trivial", "kummer:1/2", "delta"):
        report = cross_check(n, model, max_deg=6)
        print(
            f"{n:>6} {model:>12} {report.verdict:>12} "
            f"{str(report.computed_nonzero):>8} {str(report.agree):>6}"
        )
print()
report = cross_check(3, "trivial", max_deg=6)
print("sample justification:", report.justification)
