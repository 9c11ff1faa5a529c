#!/usr/bin/env python3
"""Adapter exposing a PySAT backend with SAT-competition style output.

Usage: pysat_solve.py [--backend NAME] INSTANCE.cnf

Prints "s SATISFIABLE" / "s UNSATISFIABLE" and "v ... 0" lines so it can be
used as PACKCOLOR_SOLVER. Requires `pip install python-sat`.
"""
import argparse
import sys

from pysat.formula import CNF
from pysat.solvers import Solver


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--backend", default="cadical153")
    ap.add_argument("instance")
    args = ap.parse_args()

    cnf = CNF(from_file=args.instance)
    with Solver(name=args.backend, bootstrap_with=cnf.clauses) as s:
        ok = s.solve()
        if not ok:
            print("s UNSATISFIABLE", flush=True)
            return 20
        model = set(s.get_model() or [])
        print("s SATISFIABLE")
        lits = [v if v in model else -v for v in range(1, cnf.nv + 1)]
        for i in range(0, len(lits), 20):
            print("v " + " ".join(map(str, lits[i:i + 20])))
        print("v 0", flush=True)
        return 10


if __name__ == "__main__":
    sys.exit(main())
