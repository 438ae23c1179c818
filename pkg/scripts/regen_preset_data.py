#!/usr/bin/env python3
"""Regenerate the packaged preset catalog from the generator tables.

Writes one group JSON file per preset into src/crystile/data/presets/.
"""

import pathlib
import sys

sys.path.insert(0, str(pathlib.Path(__file__).resolve().parents[1] / "src"))

from crystile.groups import PRESET_NAMES, _preset_from_generators
from crystile.serialize import group_to_json, write_json_file


def main() -> None:
    out_dir = pathlib.Path(__file__).resolve().parents[1] / "src" / "crystile" / "data" / "presets"
    out_dir.mkdir(parents=True, exist_ok=True)
    for name in PRESET_NAMES:
        group = _preset_from_generators(name)
        path = out_dir / f"{name}.json"
        write_json_file(str(path), group_to_json(group))
        print(f"wrote {path} (order {group.order()})")


if __name__ == "__main__":
    main()
