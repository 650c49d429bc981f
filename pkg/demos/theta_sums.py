"""The theta lattice sums C_a and the product they equal."""

from etaq.products import bracket
from etaq.series import cancel_q0, expand_factors, reduce_mod_z_pow
from etaq.theta import c_series, enumerate_lattice, klyachko_theta, r_factors

a = 3
print("first lattice points:", enumerate_lattice(a, 2))

c = c_series(a, 6)
for n in range(4):
    print(f"q^{n}:", c.row(n))

# the same series from the product side, after cancelling the q^0 pole of 1/[z;q]
prod = expand_factors(cancel_q0(r_factors(a)), 6)
print("theta sum == product:", prod == c)

# cleared form: multiply through by [z;q]
lhs = c * expand_factors(bracket(1, 0, 1), 6)
print("C_3 [z;q] row 1:", lhs.row(1))

# each q-row spreads evenly over the residues of the z-exponent mod a
red = reduce_mod_z_pow(c_series(a, 12), a)
print([[red.coeff(n, k) for k in range(a)] for n in range(6)])

# and setting z = 1 gives a times the Klyachko sum
print(list(klyachko_theta(a, 12).coeffs))
