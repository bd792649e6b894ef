# The installed `sdres` command exposes pipeline prefixes; this drives the
# same entry point in-process.  Exit code 0 covers the "No SDResultant"
# verdict too: a negative answer is an answer, not an error.

import json
import tempfile

from sdres.cli import main

SYSTEM = """
P0 = u + u*y[1,0]
P1 = u + u*y[1,1]
"""

with tempfile.NamedTemporaryFile("w", suffix=".sys", delete=False) as handle:
    handle.write(SYSTEM)
    path = handle.name

print("== sdres check ==")
code = main(["check", path])
print("exit code:", code)

print("== sdres bounds ==")
main(["bounds", path])

print("== sdres resultant --format json --out ... ==")
with tempfile.NamedTemporaryFile(suffix=".json", delete=False) as out:
    main(["resultant", path, "--format", "json", "--out", out.name])
    data = json.load(open(out.name))
print("terms in the resultant:", len(data["resultant"]["terms"]))
print("kept variables:", data["kept_vars"])
