"""Fetch the published result collection and check it against the data layout.

Usage::

    python scripts/fetch_paper_data.py DEST [--repo URL] [--ref REF]

The upstream repository is cloned into ``DEST/upstream``.  The golden
acceptance tests read a data directory in this package's layout
(``languages.tsv``, ``results.tsv``, ``subsets.tsv``; see
``langequity.dataset``).  If ``DEST`` already holds those files the script
only validates them; otherwise it lists what is missing so the upstream
tables can be converted.  Once ``DEST`` validates, run::

    LANGEQUITY_PAPER_DATA=DEST pytest tests/test_acceptance.py
"""

import argparse
import subprocess
import sys
from pathlib import Path

DEFAULT_REPO = "https://github.com/neubig/globalutility"
REQUIRED = ("languages.tsv", "results.tsv")
OPTIONAL = ("subsets.tsv", "trade.tsv", "countries.tsv", "language_countries.tsv")


def clone(repo, ref, dest):
    if dest.exists():
        print(f"{dest} exists; skipping clone")
        return
    cmd = ["git", "clone", "--depth", "1", repo, str(dest)]
    if ref:
        cmd[3:3] = ["--branch", ref]
    subprocess.run(cmd, check=True)


def validate(dest):
    from langequity.dataset import DataDir

    missing = [name for name in REQUIRED if not (dest / name).is_file()]
    if missing:
        print(f"missing in {dest}: {', '.join(missing)}")
        print("convert the upstream tables (see upstream/) into these files, then rerun")
        return 1
    data = DataDir(dest)
    print(f"{len(data.registry)} languages; tasks: {', '.join(data.default_tasks())}")
    for name in OPTIONAL:
        print(f"  {name}: {'present' if (dest / name).is_file() else 'absent'}")
    return 0


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("dest", type=Path)
    parser.add_argument("--repo", default=DEFAULT_REPO)
    parser.add_argument("--ref", default=None)
    parser.add_argument("--no-clone", action="store_true", help="only validate DEST")
    args = parser.parse_args(argv)
    args.dest.mkdir(parents=True, exist_ok=True)
    if not args.no_clone:
        try:
            clone(args.repo, args.ref, args.dest / "upstream")
        except (OSError, subprocess.CalledProcessError) as exc:
            print(f"clone failed: {exc}", file=sys.stderr)
            return 1
    return validate(args.dest)


if __name__ == "__main__":
    sys.exit(main())
