import json
import os
import subprocess
import sys

CLI = [sys.executable, "-m", "dehnsom.cli"]


def run(*args, env=None):
    full_env = dict(os.environ)
    if env:
        full_env.update(env)
    return subprocess.run(CLI + list(args), capture_output=True, text=True,
                          env=full_env)


def test_verify_ds_torus_exit_zero():
    r = run("verify", "ds", "--gen", "torus_7")
    assert r.returncode == 0
    assert "h=[1, 4, 10, -1]" in r.stdout
    assert "PASS" in r.stdout


def test_verify_json_output():
    r = run("verify", "ds", "--gen", "torus_7", "--json")
    data = json.loads(r.stdout)
    assert data[0]["schema"] == 1
    assert data[0]["pass"] is True
    assert {"index", "lhs", "rhs", "residual", "asserted"} <= set(data[0]["rows"][0])


def test_compute_toric_polygon():
    r = run("compute", "toric", "--gen", "polygon_lattice(5)", "--json")
    data = json.loads(r.stdout)
    assert data["h_poly"] == [1, 3, 1]


def test_verify_main_default_top_spec():
    r = run("verify", "main", "--gen", "face_poset(suspension(torus_7))")
    assert r.returncode == 0
    assert "outside theorem range" in r.stdout


def test_classify_complex_and_poset():
    r = run("classify", "--gen", "torus_7", "--json")
    data = json.loads(r.stdout)
    assert data["semi_eulerian"] is True and data["min_singular_j"] == 0
    r = run("classify", "--gen", "face_poset(torus_7,true)", "--check", "--json")
    data = json.loads(r.stdout)
    assert data["min_j_sing"] == 0 and data["simplicial"] is True


def test_generate_round_trip(tmp_path):
    path = tmp_path / "torus.facets"
    r = run("generate", "circle_join(4,torus_7)", "-o", str(path))
    assert r.returncode == 0
    r = run("verify", "ds", str(path))
    assert r.returncode == 0
    # canonical round trip: serialize(parse(serialize(X))) == serialize(X)
    text = path.read_text()
    r = run("generate", "circle_join(4,torus_7)")
    assert r.stdout == text


def test_generate_poset_round_trip(tmp_path):
    path = tmp_path / "poset.json"
    run("generate", "face_poset(rp2_6,true)", "-o", str(path))
    r = run("verify", "simplicial-ds", str(path))
    assert r.returncode == 0
    r = run("verify", "all", str(path))
    assert r.returncode == 0


def test_balanced_file_input(tmp_path):
    path = tmp_path / "c4.bal"
    path.write_text("colors: 0=1 1=2 2=1 3=2\n0 1\n1 2\n2 3\n0 3\n")
    r = run("verify", "flag-ds", str(path))
    assert r.returncode == 0


def test_flag_ds_from_poset_spec():
    r = run("verify", "flag-ds", "--gen", "boolean_lattice(3)")
    assert r.returncode == 0


def test_report_rendering(tmp_path):
    out = tmp_path / "report.json"
    run("verify", "swartz", "--gen", "face_poset(torus_7,true)", "-o", str(out))
    r = run("report", str(out))
    assert r.returncode == 0 and "swartz" in r.stdout

    bad = {"schema": 1, "identity": "demo", "parameters": {},
           "rows": [{"index": "k=0", "lhs": 1, "rhs": 0, "asserted": True}],
           "pass": False}
    out.write_text(json.dumps(bad))
    r = run("report", str(out))
    assert r.returncode == 1 and "FAIL" in r.stdout


def test_error_exit_codes(tmp_path):
    r = run("verify", "ds", "--gen", "unknown_thing(3)")
    assert r.returncode == 2
    diag = json.loads(r.stderr)
    assert diag["error"] == "UnknownGenerator"

    r = run("verify", "stanley", "--gen", "face_poset(torus_7,true)")
    assert r.returncode == 2  # not Eulerian: validation error

    bad = tmp_path / "bad.facets"
    bad.write_text("# nothing here\n")
    r = run("compute", "f", str(bad))
    assert r.returncode == 2


def test_threads_env_var():
    r = run("verify", "ds", "--gen", "torus_7", env={"DEHNSOM_THREADS": "3"})
    assert r.returncode == 0
    r = run("verify", "ds", "--gen", "torus_7", env={"DEHNSOM_THREADS": "0"})
    assert r.returncode == 0
    r = run("verify", "ds", "--gen", "torus_7", env={"DEHNSOM_THREADS": "nope"})
    assert r.returncode == 2


def test_seed_option():
    a = run("generate", "random_pure_complex(3,8,0.4)", "--seed", "5")
    b = run("generate", "random_pure_complex(3,8,0.4,5)")
    assert a.stdout == b.stdout


def test_colors_option(tmp_path):
    facets = tmp_path / "c4.facets"
    facets.write_text("0 1\n1 2\n2 3\n0 3\n")
    colors = tmp_path / "c4.colors"
    colors.write_text("0=1 1=2 2=1 3=2\n")
    r = run("verify", "flag-ds", str(facets), "--colors", str(colors))
    assert r.returncode == 0
    r = run("verify", "flag-ds", str(facets))
    assert r.returncode == 2
