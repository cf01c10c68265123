"""
From extension-variable resolution to DQRAT, then a brute-force sanity check
============================================================================

"""

import time

from dqratpu import oracle
from dqratpu.dqratcheck import check_script
from dqratpu.genfam import running_example, running_example_proof
from dqratpu.respsys import check_dres, translate_dres_to_dqrat
from dqratpu.textio import serialize_dqrat, serialize_resproof

f = running_example()
proof = running_example_proof()
print(serialize_resproof(proof))
print("dres:", check_dres(f, proof).diagnostic())

# Each resolvent becomes an ATA line, each reduction a u line, and the
# extension step becomes an e line, three clauses and one removal.
script = translate_dres_to_dqrat(f, proof)
print(serialize_dqrat(script))
print("dqrat:", check_script(f, script).diagnostic(), f"({len(script)} lines for {proof.node_count()} nodes)")

print("oracle says the formula is", oracle.eval_dqbf(f))

# Every formula with up to two universals, two existentials and three
# clauses of width three: shrink the prefix to the pure pairs and compare
# truth values.  Symmetric copies under polarity flips are evaluated once.
t = time.perf_counter()
report = oracle.scheme_soundness_sweep(oracle.SweepParams(2, 2, 3, 3))
print("\n".join(report.lines()))
print(f"wall {time.perf_counter() - t:.1f}s")
