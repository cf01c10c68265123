"""
Reflexive versus pure resolution paths
======================================

"""

from dqratpu import depscheme
from dqratpu.core import Formula, Prefix
from dqratpu.genfam import FamilyParams, ParityVars, gen_bridged_refutation, gen_family
from dqratpu.respsys import LdqConfig, check_ldq

u, v, x, y, z = 1, 2, 3, 4, 5
f = Formula(Prefix([u, v], {x: [u, v], y: [u, v], z: [u, v]}),
            [(u, v, y), (u, -v, x, -y), (-u, v, z), (-u, -v, -x, -z)])

# All six pairs are trivially dependent.  Reflexive paths keep all of them;
# pure paths, which may never step into a clause holding the opposite
# literal of the universal they start from, keep three.
for scheme in ("trv", "rrs", "pu"):
    print(scheme, sorted(depscheme.all_pairs(f, scheme)))

# The witness for a surviving pair is a pair of paths of opposite polarity.
print(depscheme.dependency_witness(f, u, y, "rrs"))
print(depscheme.dependency_witness(f, u, y, "pu"))

# Shrinking the prefix to the pure pairs gives a genuine DQBF.
print(depscheme.apply_scheme(f, "pu").prefix)

# On the bridged parity formulas the gap is dramatic: under pure paths only
# (z, b) survives, so z can be reduced right after every axiom and the
# refutation stays linear.
for n in (2, 4, 8):
    g = gen_family(FamilyParams("bridged_ts_lqparity", n))
    pv = ParityVars(n)
    proof = gen_bridged_refutation(n)
    pu = check_ldq(g, proof, LdqConfig("pu"))
    rrs = check_ldq(g, proof, LdqConfig("rrs"))
    print(f"N={n}: pu pairs={sorted(depscheme.all_pairs(g, 'pu'))} (z={pv.z}, b={pv.b}) "
          f"nodes={proof.node_count()} pu:{pu.status.name} rrs:{rrs.diagnostic()}")
