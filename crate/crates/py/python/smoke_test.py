import logsyn

run = logsyn.syntomic(2, 2, 1)
assert run["pass"], run["discrepancies"]
assert run["precision"] == 4 and run["orbit_bound"] == 4
h1 = run["degrees"][1]
assert h1.torsion == [1] and h1.at_cap == 1, h1

assert logsyn.witt_decompose(2, 5) == [(1, 3), (3, 1), (5, 1)]
assert logsyn.smith_exponents(2, 5, [[2, 0], [2, 4]]) == [1, 2]

x = logsyn.Witt.from_integer(3, 7, 3)
y = logsyn.Witt.from_integer(3, 5, 3)
assert (x * y).to_integer() == 35 % 27
assert (x + y).to_integer() == 12
assert x.frobenius().verschiebung().to_integer() == 21

table = logsyn.logtc(2, 2, -2, 3)
summands, module = table[3]
assert module.exponents == [1, 2], (summands, module)

ok, items = logsyn.verify_axes()
assert ok and len(items) == 8
ok, items = logsyn.verify_axes((1, 1))
assert not ok and not items[6][1]

assert logsyn.descent(2, 1, 4)[0]
assert logsyn.nil_invariance(2, 3, 1, 6)[0]
assert logsyn.axes(5, 2, 4)[0]
assert logsyn.perfection(3, 2, 10) == (True, True, True)

low = logsyn.syntomic(2, 2, 1, precision=1)
assert low["status"] == "precision-failure" and not low["pass"]

print("smoke test passed")
