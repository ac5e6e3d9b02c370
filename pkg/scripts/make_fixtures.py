"""Regenerate the bundled KB fixtures under tests/fixtures."""
from pathlib import Path

from dlcontrast.generators import kn_family, synthetic_ontology
from dlcontrast.parser import serialize

SIZES = (25, 40, 60, 80, 100, 150, 200, 300, 400, 500)
ROOT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def main():
    (ROOT / "bench").mkdir(parents=True, exist_ok=True)
    (ROOT / "kn3.dlkb").write_text("# diamond chain, n = 3\n" + serialize(kn_family(3)))
    for i, n in enumerate(SIZES):
        kb = synthetic_ontology(n, seed=1000 + i)
        path = ROOT / "bench" / f"synth_{n:03d}.dlkb"
        path.write_text(f"# synthetic ontology, {len(kb)} axioms, seed {1000 + i}\n" + serialize(kb))
        print(path.name, len(kb))


if __name__ == "__main__":
    main()
