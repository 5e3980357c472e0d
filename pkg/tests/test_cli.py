from talbot import cli


def run_capture(argv, capsys):
    code = cli.run(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_usage_error_exit_code(capsys):
    code, _, err = run_capture(["no-such-command"], capsys)
    assert code == 64
    code, _, _ = run_capture([], capsys)
    assert code == 64


def test_precondition_exit_code(capsys):
    # q = 4 is not prime
    code, _, err = run_capture(
        ["expsum", "--poly", "x0^3", "--q", "4"], capsys)
    assert code == 2
    assert "precondition" in err


def test_expsum_stdout_and_manifest(capsys):
    code, out, err = run_capture(
        ["expsum", "--poly", "x0^3", "--q", "7"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].startswith("# manifest=")
    assert lines[1] == "p0,p1,re,im,abs"
    assert len(lines) == 2 + 49
    assert err.startswith("# run manifest ")


def test_byte_identical_reruns(tmp_path, capsys):
    argv = ["gq", "--poly", "x0^3", "--q", "11", "--c1", "0.1"]
    paths = []
    for i in range(2):
        out = tmp_path / f"run{i}.csv"
        code, _, _ = run_capture(argv + ["--out", str(out)], capsys)
        assert code == 0
        paths.append(out)
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_config_roundtrip(tmp_path, capsys):
    cfg = {"poly": "x0^3", "q": "7"}
    path = tmp_path / "run.cfg"
    cli.save_config(cfg, str(path))
    assert cli.load_config(str(path)) == cfg
    code, out_cfg, _ = run_capture(
        ["expsum", "--config", str(path)], capsys)
    code2, out_flags, _ = run_capture(
        ["expsum", "--poly", "x0^3", "--q", "7"], capsys)
    assert code == code2 == 0
    assert out_cfg == out_flags


def test_flags_override_config(tmp_path, capsys):
    path = tmp_path / "run.cfg"
    cli.save_config({"poly": "x0^3", "q": "7"}, str(path))
    code, out, _ = run_capture(
        ["expsum", "--config", str(path), "--q", "11"], capsys)
    assert code == 0
    # 11^2 rows for q=11, not 49
    assert len(out.strip().split("\n")) == 2 + 121


def test_manifest_hash_tracks_config():
    h1 = cli.manifest_hash({"q": "7", "poly": "x0^3"})
    h2 = cli.manifest_hash({"q": "11", "poly": "x0^3"})
    assert h1 != h2
    assert h1 == cli.manifest_hash({"poly": "x0^3", "q": "7"})


def test_jarnik_and_mtp_scalars(capsys):
    code, out, _ = run_capture(["jarnik", "--tau", "4"], capsys)
    assert code == 0
    assert out.strip() == "0.5"
    code, out, _ = run_capture(
        ["mtp", "--b", "1.0,0.5", "--a", "0.5,0.25"], capsys)
    assert code == 0
    assert float(out.strip()) > 0


def test_regions_csv(tmp_path, capsys):
    out = tmp_path / "curve.csv"
    code, _, _ = run_capture(
        ["regions", "--k", "3", "--n", "2", "--what", "thm14",
         "--samples", "16", "--out", str(out)], capsys)
    assert code == 0
    lines = out.read_text().strip().split("\n")
    assert lines[0].startswith("# manifest=")
    assert len(lines) >= 2 + 16


def test_slabs_and_measure(tmp_path, capsys):
    args = ["--k", "3", "--n", "2", "--R", "256", "--u1", "0.3",
            "--u2", "0.9", "--poly", "x0^3"]
    out = tmp_path / "slabs.csv"
    code, _, _ = run_capture(["slabs"] + args + ["--out", str(out)], capsys)
    assert code == 0
    header = out.read_text().split("\n")[1]
    assert header.split(",") == ["center1", "center2", "radius1",
                                 "radius2", "p1", "p2", "q"]

    code, out2, _ = run_capture(["measure"] + args, capsys)
    assert code == 0
    mlines = out2.strip().split("\n")
    assert mlines[1].split(",")[0] == "measure"
    assert 0 < float(mlines[2].split(",")[0]) < 1


def test_evolve_slab_point(capsys):
    code, out, _ = run_capture(
        ["evolve", "--k", "3", "--n", "2", "--u1", "0.3", "--u2", "0.9",
         "--R", "4096", "--poly", "x0^3", "--slab=-1,1"], capsys)
    assert code == 0
    lines = out.strip().split("\n")
    assert lines[0].startswith("# manifest=")
    assert len(lines) >= 3
