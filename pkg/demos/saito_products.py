"""Walk through the eta products S_N: expand a few, check signs, split one up."""

from etaq.saito import classify, nonneg_report, saito_series, verify_case2, verify_case3

# S_6 carries the prefactor q^(5/12); the series itself starts 1 + q + q^2 ...
pre, s6 = saito_series(6, 20)
print("S_6 prefactor", pre)
print("S_6 coefficients", list(s6.coeffs))

# Nonnegativity up to q^200 for every N up to 60.
bad = [r.N for r in (nonneg_report(N, 200) for N in range(1, 61)) if not r.passed]
print("negative coefficient found for N in", bad or "none")

# The prime case: the prefactor of S_p is (p^2 - 1)/24.
for p in (2, 3, 5, 7, 11):
    print(p, saito_series(p, 0)[0])

# How the argument splits N, and the two reductions checked exactly.
for N in (15, 21, 12, 45):
    print(N, classify(N))
print(verify_case2(21, 150).line())
print(verify_case3(45, 150).line())
# 18 is even, so p = 2 and M = 9; taking p = 3 instead still gives an exact reduction
print(verify_case2(18, 150).line())
print(verify_case3(18, 150, p=3).line())
