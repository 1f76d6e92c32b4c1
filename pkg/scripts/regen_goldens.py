#!/usr/bin/env python3
"""Regenerate the golden export files from the scripted fixture repositories.

Run only when an intentional format change has been made and the new bytes
have been audited by hand; tests compare against these files byte-for-byte.
"""

import sys
import tempfile
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
sys.path.insert(0, str(ROOT / "tests"))

from conftest import build_four_file_repo, build_nested_repo  # noqa: E402

from busfactor.github import BotHint  # noqa: E402
from busfactor.gitio import RepoHandle  # noqa: E402
from busfactor.pipeline import analyze, artifact_bytes  # noqa: E402

GOLDEN_DIR = ROOT / "tests" / "golden"

FIXTURES = {
    "four_files": (build_four_file_repo, ()),
    "nested": (build_nested_repo, (BotHint(login="dependabot[bot]"),)),
}


def main() -> int:
    GOLDEN_DIR.mkdir(parents=True, exist_ok=True)
    for label, (builder, hints) in FIXTURES.items():
        with tempfile.TemporaryDirectory() as td:
            repo = builder(Path(td) / label).path
            result = analyze(RepoHandle(repo), bot_hints=hints)
            artifacts = artifact_bytes(result)
        for suffix in ("tree.json", "tree.csv"):
            target = GOLDEN_DIR / f"{label}.{suffix}"
            target.write_bytes(artifacts[suffix])
            print(f"wrote {target} ({len(artifacts[suffix])} bytes)")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
