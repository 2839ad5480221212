"""Drive the command line: one rank query and a random cross-validation batch."""

import json
import tempfile
from pathlib import Path

from gainmat.cli import main as gainmat


def main():
    with tempfile.TemporaryDirectory() as tmp:
        doc = Path(tmp) / "loop.json"
        doc.write_text(json.dumps({"group": {"family": "cyclic", "k": 3},
                                   "graph": {"vertices": 1, "edges": [{"tail": 0, "head": 0, "gain": "r^1"}]}}))
        gainmat(["check", "--input", str(doc), "--mode", "rigidity"])
        batch = Path(tmp) / "random.json"
        batch.write_text(json.dumps({"random": {"group": {"family": "dihedral", "k": 3}, "vertices": 4, "edges": 6}}))
        gainmat(["cross-validate", "--input", str(batch), "--matroid", "rho", "--trials", "10"])


if __name__ == "__main__":
    main()
