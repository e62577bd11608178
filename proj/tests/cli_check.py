import os
import subprocess
import sys
import tempfile

cli = sys.argv[1]
failed = 0


def run(args, threads=None):
    env = dict(os.environ)
    if threads is not None:
        env["SUBLORENTZ_THREADS"] = str(threads)
    return subprocess.run([cli, *args], capture_output=True, env=env)


def expect(cond, what):
    global failed
    print(("ok   " if cond else "FAIL ") + what)
    failed += not cond


expect(run([]).returncode == 1, "no command is a usage error")
expect(run(["--help"]).returncode == 0, "--help exits 0")
expect(run(["frobnicate"]).returncode == 1, "unknown command")
expect(run(["verify", "nope"]).returncode == 1, "unknown suite")
expect(run(["--format", "xml", "plotdata", "mu-curve"]).returncode == 1, "unknown format")
expect(run(["geodesic", "shoot", "--v0", "1", "--theta", "0"]).returncode == 1, "wrong vector length")
expect(run(["geodesic", "connect", "--target", "1", "1", "0.5"]).returncode == 1, "unreachable target")
expect(run(["verify", "mu", "--n", "10"]).returncode == 0, "passing suite exits 0")

shoot = run(["geodesic", "shoot", "--v0", "1", "0.5", "--theta", "0.3", "--samples", "3"])
lines = shoot.stdout.decode().splitlines()
expect(shoot.returncode == 0 and lines[0] == "t,x,y,z,xdot,ydot,speed" and len(lines) == 4, "shoot CSV layout")
expect(lines[1] == "0,0,0,0,1,0.5,-0.75", "shoot CSV uses shortest decimals")

for args in (["reachable-sample", "--n", "40", "--nonspacelike"],
             ["verify", "inclusion", "--n", "40"],
             ["verify", "appendix", "--n", "20"],
             ["--format", "json", "geodesic", "shoot", "--group", "quat", "--v0", "1", "0.1", "0.2", "0.3",
              "--theta", "0.5", "0.6", "0.7", "--method", "rk45"]):
    a, b = run(args, threads=1), run(args, threads=4)
    expect(a.returncode == 0 and a.stdout == b.stdout, "byte-identical across thread counts: " + " ".join(args))
    c = run(args, threads=2)
    expect(a.stdout == c.stdout, "byte-identical on rerun: " + " ".join(args))

s1 = run(["--seed", "1", "reachable-sample", "--n", "10"]).stdout
s2 = run(["--seed", "2", "reachable-sample", "--n", "10"]).stdout
expect(s1 != s2, "seed changes randomized output")
expect(run(["reachable-sample", "--n", "10"]).stdout == run(["--seed", "20240917", "reachable-sample", "--n", "10"]).stdout,
       "default seed is fixed")

with tempfile.TemporaryDirectory() as d:
    path = os.path.join(d, "mu.csv")
    r = run(["-o", path, "plotdata", "mu-curve", "--points", "11"])
    with open(path, "rb") as f:
        expect(r.returncode == 0 and r.stdout == b"" and f.read() == run(["plotdata", "mu-curve", "--points", "11"]).stdout,
               "--output writes the same bytes")

sys.exit(1 if failed else 0)
