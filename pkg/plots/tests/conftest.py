import subprocess
import sys

import pytest


def talbot_csv(out_path, *args):
    """Produce a fresh CSV through the talbot command line interface."""
    cmd = [sys.executable, "-m", "talbot", *args, "--out", str(out_path)]
    res = subprocess.run(cmd, capture_output=True, text=True)
    assert res.returncode == 0, res.stderr
    return str(out_path)


@pytest.fixture(scope="session")
def csv_dir(tmp_path_factory):
    d = tmp_path_factory.mktemp("csv")
    talbot_csv(d / "thm14_k3.csv", "regions", "--k", "3", "--n", "2",
               "--what", "thm14", "--samples", "32")
    talbot_csv(d / "thm14_k2.csv", "regions", "--k", "2", "--n", "2",
               "--what", "thm14", "--samples", "32")
    talbot_csv(d / "domain_k5.csv", "regions", "--k", "5", "--n", "2",
               "--what", "regions")
    talbot_csv(d / "cover.csv", "cover", "--k", "2", "--n", "2",
               "--u1", "0.5", "--u2", "0.75", "--poly", "x0^2",
               "--scales", "256,1024,4096,16384")
    talbot_csv(d / "expsum.csv", "expsum", "--poly", "x0^3", "--q", "31")
    return d
