"""Survival of u_V in MU^((C_n)) / a_lambda(2^j) for every irreducible orientable V."""
import argparse

from slicetower.rep_ring import format_rep
from slicetower.ss_engine import irreducible_orientable, orientation_index, survival_status


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=8)
    args = ap.parse_args()
    print("V\tk\tj\tstatus\tdetail")
    for j in range(args.n.bit_length()):
        for V in irreducible_orientable(args.n):
            c = survival_status(V, j)
            if c.status == "Dies":
                detail = f"H=C_{c.H} (a,r,b)={c.decomposition} page<={c.page_bound}"
            elif c.obstruction:
                detail = f"target at page {c.obstruction[0]}: {c.obstruction[2]}"
            else:
                detail = f"{len(c.checked)} targets vanish"
            print(f"{format_rep(V)}\t{orientation_index(V)}\t{j}\t{c.status}\t{detail}")


if __name__ == "__main__":
    main()
