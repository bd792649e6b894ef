# The whole pipeline in one call: existence check, subsystem extraction,
# order bounds, reduction to a lattice-form algebraic system, and the
# resultant as an exact quotient of Newton-matrix determinants.

from sdres import parse_system, run_pipeline, serialize

TEXT = """
P0 = u + u*y[1,1]^2*y[2,1]^2*y[3,1] + u*y[1,0]^2*y[2,0]*y[3,0]*y[4,0]*y[4,1]
P1 = u + u*y[1,1]^2*y[2,1]^2*y[3,1] + u*y[1,1]^2*y[2,1]*y[3,1]*y[4,1]*y[4,2]
P2 = u + u*y[1,2]^2*y[2,2]^2*y[3,2] + u*y[1,1]^2*y[2,1]^2*y[3,1] + u*y[1,0]^2*y[2,0]*y[3,0]*y[4,0]*y[4,1]
P3 = u + u*y[1,1]*y[2,1] + u*y[1,1]^2*y[2,1]*y[3,1]*y[4,2]
P4 = u + u*y[1,1]*y[3,2]*y[4,1] + u*y[1,1]^2*y[2,2]*y[4,0]
"""

report = run_pipeline(parse_system(TEXT), seed=0)
print(serialize(report, "text").decode())

# the structured form is byte-stable for a fixed seed, handy for pipelines
payload = serialize(report, "json")
print(f"structured report: {len(payload)} bytes of stable JSON")
