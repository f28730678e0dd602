"""Export the Hasse diagram of a frame's sublocale coframe as Graphviz DOT.

    python scripts/export_hasse.py corpus/chain3.lat --out chain3.dot
    python scripts/export_hasse.py corpus/bool2.lat --host SoL | dot -Tpng ...
"""

import argparse
import sys
from pathlib import Path

from subloc.lattice import FrameWitness
from subloc.latfile import parse_lattice
from subloc.sublocales import enumerate_sublocales
from subloc.viz import hasse_dot


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("file", help="lattice file to read")
    parser.add_argument("--host", choices=("SL", "SoL"), default="SL",
                        help="all sublocales, or only the fitted ones")
    parser.add_argument("--out", default="-",
                        help="DOT output path, '-' for stdout")
    args = parser.parse_args(argv)

    fw = FrameWitness.of(parse_lattice(Path(args.file).read_text()))
    host = enumerate_sublocales(fw)
    if args.host == "SoL":
        host = host.fitted_subcoframe()
    dot = hasse_dot(host, name=Path(args.file).stem)
    if args.out == "-":
        print(dot, end="")
    else:
        Path(args.out).write_text(dot)
        print(f"wrote {args.out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
