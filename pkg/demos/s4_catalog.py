"""The ten admissible permutation pairs in S_4 and a solution for each.

Every case is checked twice, once with the unitarity criterion and once
against the Temperley-Lieb relations on three sites.
"""

from tlforge.core import build_generator, verify_tl_axioms
from tlforge.permutations import canonicalize, enumerate_admissible_classes
from tlforge.rank2 import s4_catalog

classes = enumerate_admissible_classes(4)
print(f"{len(classes)} admissible classes in S_4")

enumerated = {c.canonical for c in classes}
for e in s4_catalog():
    assert canonicalize(e.pair).canonical in enumerated
    rel = verify_tl_axioms(build_generator(e.solution), e.Q, 4)
    print(
        f"  {e.label})  {str(e.pair.first):<10} {str(e.pair.second):<12} "
        f"Q = {e.Q:.6f}  criterion {e.report.max_residual():.1e}  relations {rel.max_residual():.1e}  [{e.path}]"
    )
