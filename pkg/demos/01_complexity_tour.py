"""Tour of the complexity invariant for systems of linear forms.

The complexity at position i is the smallest number of classes into which
the remaining forms can be partitioned so that no class rationally spans
form i.  Systems with a repeated or zero form come out infinite; the
arithmetic-progression systems climb one step per extra term.
"""
from primelattice import INFINITY, complexity
from primelattice.instances import ap_system, identity_system, twin_system, vinogradov_system


def show(name, sys):
    rep = complexity(sys)
    overall = "infinity" if rep.overall == INFINITY else rep.overall
    print(f"{name}: overall {overall}")
    for i, (v, w) in enumerate(zip(rep.per_index, rep.witness_partitions)):
        if w is None:
            print(f"  form {i + 1}: infinite (zero or proportional to another form)")
        else:
            parts = " | ".join(
                "{" + ",".join(str(j + 1) for j in sorted(cls)) + "}" for cls in w
            )
            print(f"  form {i + 1}: {v}  witness partition {parts}")
    print()


show("independent coordinates (d=3)", identity_system(3))
show("three-term progressions n, n+m, n+2m", ap_system(3))
show("four-term progressions", ap_system(4))
show("ternary sums x+y, with x+y+z fixed", vinogradov_system())
show("twin pair n, n+2 (one variable)", twin_system())
