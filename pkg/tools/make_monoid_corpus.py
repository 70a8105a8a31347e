"""Write tests/data/monoids_le4.json: every associative Cayley table on
{0, ..., n-1} with unit 0, for n = 1..4 (not up to isomorphism).

    python tools/make_monoid_corpus.py
"""

import json
import sys
from pathlib import Path

root = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(root / "tests"))

from oracles import is_group, monoid_tables  # noqa: E402


def main():
    corpus = []
    for n in range(1, 5):
        for t in monoid_tables(n):
            corpus.append({"size": n, "table": t, "unit": 0, "group": is_group(t, 0)})
    out = root / "tests" / "data" / "monoids_le4.json"
    out.write_text(json.dumps(corpus, separators=(",", ":")) + "\n")
    print(f"{len(corpus)} tables, {sum(c['group'] for c in corpus)} groups -> {out}")


if __name__ == "__main__":
    main()
