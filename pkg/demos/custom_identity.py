"""Check identities on the J-ternary algebra of tensor(2,2): the stock hein1 file and a hand-written one that fails."""
from char3.identities import check_identity, load, parse_identity
from char3.jternary import from_structurable
from char3.structurable import choose_invertible_skew, tensor_case

A = tensor_case(2, 2)
T = from_structurable(A, choose_invertible_skew(A)).T

print(check_identity(load("hein1"), T.binding()).summary())

# symmetric in the outer slots would make T a Jordan triple; it is not
src = """
op T : V, V, V -> V
T(x, y, z) = T(z, y, x)
"""
print(check_identity(parse_identity(src, "outer symmetry"), T.binding()).summary())
