#!/usr/bin/env python3
# ruff: noqa: T201
"""Bump the pysilting version in const.py, manifest.json and CHANGELOG.md."""

import argparse
import json
import re
import sys
from pathlib import Path

ROOT = Path(__file__).parent.parent
CONST_FILE = ROOT / "pysilting" / "const.py"
MANIFEST_FILE = ROOT / "pysilting" / "manifest.json"
CHANGELOG_FILE = ROOT / "CHANGELOG.md"
VERSION_PATTERN = re.compile(r'VERSION = "(\d+)\.(\d+)\.(\d+)"')
PARTS = ("major", "minor", "patch")


def next_version(current: tuple[int, int, int], part: str) -> tuple[int, int, int]:
    """Increment one part and reset the ones after it."""
    index = PARTS.index(part)
    bumped = [*current[:index], current[index] + 1]
    return tuple(bumped + [0] * (len(PARTS) - len(bumped)))  # type: ignore[return-value]


def bump_version(part: str, *, dry_run: bool = False) -> int:
    """Rewrite the three version locations; returns the exit code."""
    const_content = CONST_FILE.read_text()
    match = VERSION_PATTERN.search(const_content)
    if not match:
        print("Error: could not find VERSION in const.py")
        return 1
    current = tuple(int(x) for x in match.groups())
    new_version = ".".join(str(x) for x in next_version(current, part))  # type: ignore[arg-type]
    print(f"Bumping version from {'.'.join(match.groups())} to {new_version}")
    if dry_run:
        return 0

    CONST_FILE.write_text(VERSION_PATTERN.sub(f'VERSION = "{new_version}"', const_content))

    manifest = json.loads(MANIFEST_FILE.read_text())
    manifest["version"] = new_version
    MANIFEST_FILE.write_text(json.dumps(manifest, indent=2) + "\n")

    changelog = CHANGELOG_FILE.read_text()
    entry = f"\n## {new_version}\n\n_Changes go here_\n\n"
    CHANGELOG_FILE.write_text(changelog.replace("# Changelog\n", f"# Changelog\n{entry}", 1))

    print("Don't forget to fill in the changelog entry!")
    return 0


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("part", choices=PARTS)
    parser.add_argument("--dry-run", action="store_true", help="print the new version only")
    args = parser.parse_args()
    sys.exit(bump_version(args.part, dry_run=args.dry_run))
