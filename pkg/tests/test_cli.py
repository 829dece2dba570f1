import os

import pytest

from quandlekit.cli import main
from quandlekit.specs import bundled_path


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def payload(stdout):
    return [line for line in stdout.splitlines() if not line.startswith("#")]


# --- check -----------------------------------------------------------------------


def test_check_dihedral(capsys):
    code, out, _ = run(capsys, "check", "dihedral:3")
    assert code == 0
    assert "kei (order 3, orbits 1)" in out
    assert "#data class kei 3 1" in out


def test_check_trivial(capsys):
    code, out, _ = run(capsys, "check", "trivial:4")
    assert code == 0
    assert "kei (order 4, orbits 4)" in out


def test_check_bad_table(tmp_path, capsys):
    bad = tmp_path / "badtable.txt"
    bad.write_text("rack 3\n0 0 0\n1 1 1\n1 2 2\n")
    code, out, _ = run(capsys, "check", str(bad))
    assert code == 1
    assert "not-a-rack" in out
    assert "R1" in out


def test_check_alexander_builtin(capsys):
    code, out, _ = run(capsys, "check", "alexander:2:1,0,1:0,1")
    assert code == 0
    assert "kei (order 4" in out


def test_check_missing_file(capsys):
    code, _, err = run(capsys, "check", "does-not-exist.txt")
    assert code == 2
    assert "error" in err


def test_check_malformed_builtin(capsys):
    code, _, err = run(capsys, "check", "dihedral:x")
    assert code == 2


# --- color -----------------------------------------------------------------------


def test_color_trefoil_count(capsys):
    code, out, _ = run(capsys, "color", "trefoil.pd", "dihedral:3", "--count")
    assert code == 0
    assert "colorings: 9" in out
    assert "#data colorings 9" in out


def test_color_shadow_count(capsys):
    code, out, _ = run(capsys, "color", "trefoil.pd", "dihedral:3", "--shadow", "--count")
    assert code == 0
    assert "shadow-colorings: 27" in out


def test_color_unknot(capsys):
    code, out, _ = run(capsys, "color", "unknot.pd", "dihedral:5", "--count")
    assert code == 0
    assert "colorings: 5" in out


def test_color_list_and_surjective(capsys):
    code, out, _ = run(capsys, "color", "trefoil.pd", "dihedral:3", "--list", "--surjective")
    assert code == 0
    assert "colorings: 6" in out
    listed = [l for l in payload(out) if ":" in l and not l.startswith("colorings")]
    assert len(listed) == 6


def test_color_torus_builtin(capsys):
    code, out, _ = run(capsys, "color", "torus:2:6", "dihedral:3", "--count")
    assert code == 0
    assert "colorings: 9" in out


def test_color_surface_data(capsys):
    code, out, _ = run(capsys, "color", "sphere.surf", "dihedral:3", "--count")
    assert code == 0
    assert "surface-colorings: 3" in out
    code, _, err = run(capsys, "color", "sphere.surf", "dihedral:3", "--shadow")
    assert code == 2


def test_color_rack_note(capsys, tmp_path):
    rack = tmp_path / "cyclic.txt"
    rack.write_text("rack 3\n1 1 1\n2 2 2\n0 0 0\n")
    code, out, _ = run(capsys, "color", "unknot.pd", str(rack), "--count")
    assert code == 0
    assert "framed-diagram data" in out


def test_color_jobs_deterministic(capsys):
    _, out1, _ = run(capsys, "color", "6_1.pd", "dihedral:3", "--list")
    _, out2, _ = run(capsys, "color", "6_1.pd", "dihedral:3", "--list", "--jobs", "3")
    assert out1.replace("--jobs 3", "") .split("\n")[2:] == out2.replace(" --jobs 3", "").split("\n")[2:]


# --- invariant --------------------------------------------------------------------


def test_invariant_trefoil(capsys):
    code, out, _ = run(
        capsys, "invariant", "trefoil.pd", "dihedral:3", "theta_R3.cochain",
        "--mode", "shadow",
    )
    assert code == 0
    assert "9 + 18t" in out
    assert "#data invariant 3 9 18 0" in out


def test_invariant_braid_t26(capsys):
    code, out, _ = run(
        capsys, "invariant", "--braid", "2: 1 1 1 1 1 1", "dihedral:3",
        "theta_R3.cochain", "--mode", "shadow",
    )
    assert code == 0
    assert "9 + 18t^2" in out


def test_invariant_surface(capsys):
    code, out, _ = run(
        capsys, "invariant", "sphere.surf", "dihedral:3", "theta_R3.cochain",
        "--mode", "surface",
    )
    assert code == 0
    assert payload(out)[0] == "3"


def test_invariant_mode_inference(capsys):
    code, out, _ = run(capsys, "invariant", "trefoil.pd", "dihedral:3", "theta_R3.cochain")
    assert code == 0
    assert "9 + 18t" in out
    code, out, _ = run(
        capsys, "invariant", "trefoil_shadow.surf", "dihedral:3", "theta_R3.cochain"
    )
    assert code == 0
    assert "9 + 18t" in out


def test_invariant_non_cocycle(tmp_path, capsys):
    chi = tmp_path / "chi.cochain"
    chi.write_text("cochain 3 3\n0 1 2 1\n")
    code, _, err = run(
        capsys, "invariant", "trefoil.pd", "dihedral:3", str(chi), "--mode", "shadow"
    )
    assert code == 1
    code, out, _ = run(
        capsys, "invariant", "trefoil.pd", "dihedral:3", str(chi),
        "--mode", "shadow", "--unsafe-no-cocycle-check",
    )
    assert code == 0
    assert "not a knot invariant" in out


def test_invariant_needs_some_diagram(capsys):
    code, _, err = run(capsys, "invariant", "dihedral:3", "theta_R3.cochain")
    assert code == 2


# --- homology ---------------------------------------------------------------------


def test_homology_r_degree1(capsys):
    code, out, _ = run(capsys, "homology", "dihedral:3", "--degree", "1", "--theory", "R")
    assert code == 0
    assert "= Z" in out
    assert "#data homology 1" in out


def test_homology_q_degree3(capsys):
    code, out, _ = run(capsys, "homology", "dihedral:3", "--degree", "3", "--theory", "Q")
    assert code == 0
    assert "= Z_3" in out
    assert "#data homology 0 3" in out


def test_homology_trivial2(capsys):
    code, out, _ = run(capsys, "homology", "trivial:2", "--degree", "2", "--theory", "Q")
    assert code == 0
    assert "= Z^2" in out


def test_homology_mod_prime(capsys):
    code, out, _ = run(
        capsys, "homology", "dihedral:3", "--degree", "3", "--theory", "Q", "--mod", "3"
    )
    assert code == 0
    assert "Z_3" in out
    assert "#data homology-mod 3 1" in out


def test_homology_mod_composite(capsys):
    code, out, _ = run(
        capsys, "homology", "dihedral:3", "--degree", "3", "--theory", "Q", "--mod", "6"
    )
    assert code == 0
    assert "Z_3" in out


def test_homology_budget_exit(capsys):
    os.environ["QUANDLEKIT_BUDGET"] = "10"
    try:
        code, _, err = run(capsys, "homology", "trivial:13", "--degree", "3", "--theory", "R")
        assert code == 3
        assert "budget" in err
    finally:
        del os.environ["QUANDLEKIT_BUDGET"]


# --- cocycles ---------------------------------------------------------------------


def test_cocycles_verify_theta(capsys):
    code, out, _ = run(
        capsys, "cocycles", "dihedral:3", "--degree", "3", "--mod", "3",
        "--verify", "theta_R3.cochain",
    )
    assert code == 0
    assert "cocycle: yes; coboundary: no" in out
    assert "#data verify 1 0" in out


def test_cocycles_verify_zero(tmp_path, capsys):
    z = tmp_path / "zero.cochain"
    z.write_text("cochain 3 3\n")
    code, out, _ = run(
        capsys, "cocycles", "dihedral:3", "--degree", "3", "--mod", "3", "--verify", str(z)
    )
    assert code == 0
    assert "cocycle: yes; coboundary: yes" in out


def test_cocycles_verify_non_cocycle(tmp_path, capsys):
    chi = tmp_path / "chi.cochain"
    chi.write_text("cochain 3 3\n0 1 2 1\n")
    code, out, _ = run(
        capsys, "cocycles", "dihedral:3", "--degree", "3", "--mod", "3", "--verify", str(chi)
    )
    assert code == 1
    assert "cocycle: no" in out


def test_cocycles_dimensions(capsys):
    code, out, _ = run(capsys, "cocycles", "dihedral:3", "--degree", "2", "--mod", "3")
    assert code == 0
    assert "cocycles: dimension" in out
    code, out, _ = run(capsys, "cocycles", "trivial:2", "--degree", "2", "--mod", "4")
    assert code == 0
    assert "composite" in out


def test_cocycles_degree_mismatch(tmp_path, capsys):
    code, _, err = run(
        capsys, "cocycles", "dihedral:3", "--degree", "2", "--mod", "3",
        "--verify", "theta_R3.cochain",
    )
    assert code == 2


# --- generic behavior ----------------------------------------------------------------


def test_deterministic_output(capsys):
    _, out1, _ = run(capsys, "invariant", "6_1.pd", "dihedral:3", "theta_R3.cochain")
    _, out2, _ = run(capsys, "invariant", "6_1.pd", "dihedral:3", "theta_R3.cochain")
    assert out1 == out2


def test_file_digest_echo(tmp_path, capsys):
    table = tmp_path / "k.txt"
    table.write_text("rack 1\n0\n")
    _, out, _ = run(capsys, "check", str(table))
    assert f"# input {table} sha256:" in out


def test_force_file_flag(tmp_path, capsys):
    weird = tmp_path / "dihedral:3"
    os.makedirs(tmp_path, exist_ok=True)
    weird.write_text("rack 1\n0\n")
    code, out, _ = run(capsys, "check", str(weird), "--file")
    assert code == 0
    assert "order 1" in out


def test_usage_error_exit_code(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["color"])
    assert exc.value.code == 2


def test_bundled_path_resolves():
    path = bundled_path("theta_R3.cochain")
    assert os.path.exists(path)


def test_braid_file_and_inline_spec(tmp_path, capsys):
    braid_file = tmp_path / "tref.braid"
    braid_file.write_text("braid 2 1 1 1\n")
    code, out, _ = run(capsys, "color", str(braid_file), "dihedral:3", "--count")
    assert code == 0
    assert "colorings: 9" in out
    code, out, _ = run(capsys, "color", "braid:2: 1 1 1", "dihedral:3", "--count")
    assert code == 0
    assert "colorings: 9" in out


def test_module_entry_point():
    import subprocess
    import sys

    proc = subprocess.run(
        [sys.executable, "-m", "quandlekit", "check", "dihedral:3"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    assert "kei (order 3, orbits 1)" in proc.stdout
