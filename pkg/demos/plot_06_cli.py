"""
The command line
================

Every operation is also reachable through ``tropvol``. This script drives
the entry point in-process and prints what a shell user would see.
"""
import json

from tropvol.cli import main

main(["chi", "0 <= x\nx < 1"])
main(["rank", "[[2,1],[1,2]]"])
main(["theta-reps", "[[2,0],[0,1]]", "--m", "6", "--format", "json"])

family = {"g": 1, "pol": {"g": 1, "entries": [[1]]}, "base": "1 <= x <= 2",
          "lattice_map": [[{"coeffs": [1], "const": "0"}]]}
code = main(["verify", json.dumps(family)])
print("exit code:", code)
