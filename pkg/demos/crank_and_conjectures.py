"""Crank counts, the nonnegative products around them, and the conjecture scans."""

from etaq.identities import crank_series, crank_table, scan_conjecture, verify

cs = crank_series(8)
table = crank_table(8)
for n in range(5):
    print(n, cs.row(n), "  brute force:", dict(sorted(table[n].items())))
# only q^1 disagrees: its z^0 coefficient is -1

for id in ("ACI", "RES1", "RES2", "EKIN"):
    print(verify(id).line())

# nothing here is a proof; the statuses read scan-pass / scan-fail
print(scan_conjecture("CONJ2A", [{"p": p} for p in range(1, 4)], 60, window=(-40, 40)).line())
grid = [dict(a=a, b=b, m=m, n=n) for a in (1, 2) for b in (1, 2) for m in (1, 2) for n in (1, 2)]
print(scan_conjecture("CONJ2B", grid, 80).line())
print(scan_conjecture("CONJ2C", [{"a": 2}], 60, window=(-40, 40)).line())
