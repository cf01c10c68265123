"""
Replaying a DQRAT proof, and why line order matters
====================================================

"""

from dqratpu.dqratcheck import CheckState, check_script
from dqratpu.textio import parse_dqdimacs, parse_dqrat, serialize_dqrat

# A false DQBF: x may only look at u, y only at v.
formula = parse_dqdimacs("""\
p cnf 4 6
a 1 2 0
d 3 1 0
d 4 2 0
1 3 4 0
-1 -2 3 4 0
-1 2 3 -4 0
1 -3 -4 0
-1 -2 -3 -4 0
-1 2 -3 4 0
""")

# The refutation introduces n = 5 as a copy of x, rewrites four clauses in
# terms of n, throws the definition away and then drops u from D_n.
proof = parse_dqrat("""\
e 5 1 0
5 3 0
-5 -3 0
-1 -2 5 -4 0
-1 2 5 4 0
-1 -2 -5 4 0
-1 2 -5 -4 0
d 5 3 0
d -5 -3 0
e 5 -1 0
u -1 -2 5 -4 0
u -1 2 5 4 0
u -1 -2 -5 4 0
u -1 2 -5 -4 0
1 2 -5 3 0
1 -2 -5 -3 0
1 2 5 -3 0
1 -2 5 3 0
u 2 1 -5 3 0
u -2 1 -5 -3 0
u 2 1 5 -3 0
u -2 1 5 3 0
1 -5 0
1 5 0
u 1 -5 0
u 1 5 0
0
""")

print(check_script(formula, proof).diagnostic())

# Which rule justified each line?
state = CheckState(formula)
for line in proof:
    print(f"{line.line:>3}  {str(line):<22} {state.apply(line)}")

# Move the dependency removal above the deletions.  While (n x) and (-n -x)
# are still around, n is tied to x and therefore to u, so the checker
# refuses and names the two paths that witness the dependency.
moved = list(proof)
removal = moved.pop(9)
moved.insert(7, removal)
print(check_script(formula, parse_dqrat(serialize_dqrat(moved))).diagnostic())
