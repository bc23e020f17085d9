"""Compare the compiled pipeline on the two-default example P2 with the brute-force oracle.

Prints a short report and, with --write, refreshes the golden file used by the tests.
The claim under test: the preferred semantics yields one answer set containing -p.
"""
import argparse
from pathlib import Path

from olp import compile_program, parse_program, preferred_answer_sets
from olp.compiler import project
from olp.core import answer_set_key, atom, lit, neg
from olp.emit import emit_answer_sets
from olp.solver import answer_sets, brute_force_answer_sets, nant

ROOT = Path(__file__).resolve().parent.parent
GOLDEN = ROOT / "tests" / "golden" / "p2_preferred.txt"


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--write", action="store_true")
    args = ap.parse_args()

    p = parse_program((ROOT / "programs" / "p2.olp").read_text())
    cp = compile_program(p)
    oracle = sorted({project(y, cp.language) for y in brute_force_answer_sets(cp.program)}, key=answer_set_key)
    pipeline = preferred_answer_sets(p)
    claim = len(oracle) == 1 and neg(atom("p")) in oracle[0] and lit(atom("p")) not in oracle[0]

    print(f"compiled rules: {len(cp)}, |NAnt|: {len(nant(cp.program))}")
    print("regular answer sets:", emit_answer_sets(answer_sets(p)) or "none")
    print("oracle preferred:", emit_answer_sets(oracle) or "none")
    print("pipeline preferred:", emit_answer_sets(pipeline) or "none")
    print("pipeline agrees with oracle:", pipeline == oracle)
    print("claim 'single answer set containing -p':", "confirmed" if claim else "not supported")
    if args.write:
        GOLDEN.write_text(emit_answer_sets(oracle))
        print(f"wrote {GOLDEN.relative_to(ROOT)}")


if __name__ == "__main__":
    main()
