"""Validates CLI reports against docs/report_schema.json."""
import json
import subprocess
import sys
import tempfile
from pathlib import Path

import jsonschema

cli, schema_path = sys.argv[1], sys.argv[2]
schema = json.loads(Path(schema_path).read_text())
commands = [
    ["cantor", "--k", "2"],
    ["measure", "--x", "3/64", "--y", "0", "--side", "1/8"],
    ["morrey", "--target", "patch", "--k", "1", "--depth", "24"],
    ["sparse", "--k", "1", "--tower", "2", "--n", "8"],
    ["sparse", "--vortex", "1"],
    ["patch", "--k", "1", "--x", "1/32", "--y", "1/32"],
    ["energy", "--k", "1", "--method", "both"],
    ["defect", "--level", "4", "--ix", "0", "--iy", "0", "--k-max", "3"],
    ["scaling", "--eps", "1/64"],
    ["certify-dimension", "--gamma", "1/10", "--delta", "1/100"],
]
with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "r.json"
    for args in commands:
        rc = subprocess.run([cli, *args, "--output", str(out)]).returncode
        if rc != 0:
            sys.exit(f"{' '.join(args)}: exit {rc}")
        jsonschema.validate(json.loads(out.read_text()), schema)
        print("ok:", " ".join(args))
