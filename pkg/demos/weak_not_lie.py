"""The 2-dim triple system xxx = y: a weak Lie superalgebra that is not Lie, and its Lie quotient."""
from char3.jternary import check_hein, weak_counterexample
from char3.semisimplify import compare_recipe, direct_from_jternary
from char3.superalgebra import cube_ideal, cube_map, fingerprint, is_lie, quotient

T = weak_counterexample()
print(check_hein(T).summary())

L = direct_from_jternary(T)
print("L^ss:", fingerprint(L).summary())
print("cube map on the odd part (columns x, y):")
print(cube_map(L))
print("is Lie:", is_lie(L))

Q = quotient(L, cube_ideal(L))
print("L^ss / cube ideal:", Q.superdim, "is Lie:", is_lie(Q))
print("recipe on L(T) agrees with the direct construction:", compare_recipe(T).equal)
