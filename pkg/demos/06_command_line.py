"""
The command-line tool
=====================

Every library capability has a ``discord-witness`` subcommand that writes
CSV or key=value text plus a JSON manifest next to ``--out``.
"""
# %%
import subprocess
import sys
import tempfile
from pathlib import Path

out = Path(tempfile.mkdtemp())


def run(*args):
    cmd = [sys.executable, "-m", "discord_witness.cli", *args, "--quiet"]
    print("$ discord-witness", " ".join(args))
    res = subprocess.run(cmd, capture_output=True, text=True)
    print(res.stdout or res.stderr, f"(exit {res.returncode})\n")


# %%
run("preset-list")
run("quantify", "--preset", "fig2a")
run("quantify", "--preset", "fig2b")
run("discord", "--preset", "rho_theta", "--theta", "1.5707963267948966")
run("landscape", "--preset", "fig2b", "--axes", "alpha,beta", "--steps", "64,64", "--out", str(out / "lb.csv"))
run("compare", "--family", "phase", "--points", "5")
run("shots", "--preset", "fig2a", "--alpha", "2.677945044588987", "--trials", "100000", "--seed", "42",
    "--out", str(out / "shots.csv"))
run("shots", "--preset", "fig2a", "--trials", "0", "--seed", "1")
print(sorted(p.name for p in out.iterdir()))
