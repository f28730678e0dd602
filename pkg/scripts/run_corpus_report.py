"""Run every verification suite over the built-in corpus and save a report.

Frames are checked in parallel worker processes and the report is ordered
by frame name, so repeated runs produce identical files.

    python scripts/run_corpus_report.py --out report.json
    python scripts/run_corpus_report.py --suite adjunction --points4 8 --seed 3
"""

import argparse
import json
import sys

from subloc.report import render_suite_text
from subloc.runner import ALL_SUITES, corpus_report


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--suite", choices=("all",) + ALL_SUITES, default="all")
    parser.add_argument("--points4", type=int, default=0, metavar="COUNT",
                        help="also sample COUNT topologies on four points")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--jobs", type=int, default=None,
                        help="worker processes; default is the CPU count")
    parser.add_argument("--out", default="-",
                        help="JSON output path, '-' for stdout")
    args = parser.parse_args(argv)

    suites = ALL_SUITES if args.suite == "all" else (args.suite,)
    rep = corpus_report(suites, points4=args.points4, seed=args.seed,
                        jobs=args.jobs)
    text = json.dumps(rep, indent=2, sort_keys=True)
    if args.out == "-":
        print(text)
    else:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
        for result in rep["results"]:
            if not result["ok"]:
                sys.stderr.write(render_suite_text(result))
        print(f"wrote {args.out}: {len(rep['results'])} suite runs over "
              f"{len(rep['frames'])} frames, ok={rep['ok']}")
    return 0 if rep["ok"] else 1


if __name__ == "__main__":
    sys.exit(main())
