"""Command-line interface: exit codes, file outputs, determinism."""

import pytest

from diffsets.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_construct_writes_files_and_verifies(tmp_path, capsys):
    out = str(tmp_path / "mcf")
    code, stdout, _ = run(capsys, "construct", "mcfarland",
                          "--q", "2", "--s", "1", "--out", out)
    assert code == 0
    assert "DS(16,6,2) OK, reversible: false" in stdout
    for suffix in (".group.txt", ".design.txt", ".manifest.txt"):
        assert (tmp_path / f"mcf{suffix}").exists()


def test_construct_is_deterministic(tmp_path, capsys):
    out = str(tmp_path / "sp")
    assert run(capsys, "construct", "spence", "--d", "1", "--out", out)[0] == 0
    first = {s: (tmp_path / f"sp{s}").read_bytes()
             for s in (".group.txt", ".design.txt")}
    manifest1 = [ln for ln in (tmp_path / "sp.manifest.txt").read_text().splitlines()
                 if not ln.startswith("elapsed_s")]
    assert run(capsys, "construct", "spence", "--d", "1", "--out", out)[0] == 0
    for s, data in first.items():
        assert (tmp_path / f"sp{s}").read_bytes() == data
    manifest2 = [ln for ln in (tmp_path / "sp.manifest.txt").read_text().splitlines()
                 if not ln.startswith("elapsed_s")]
    assert manifest1 == manifest2


def test_verify_round_trip(tmp_path, capsys):
    out = str(tmp_path / "pcp")
    run(capsys, "construct", "pcp", "--p", "2", "--n", "2", "--s", "2",
        "--out", out)
    code, stdout, _ = run(capsys, "verify", "--design", out + ".design.txt")
    assert code == 0
    assert "PDS(16,6,2,2) OK" in stdout


def test_verify_corrupted_members_exits_3(tmp_path, capsys):
    out = str(tmp_path / "mcf")
    run(capsys, "construct", "mcfarland", "--q", "2", "--s", "1", "--out", out)
    path = tmp_path / "mcf.design.txt"
    lines = path.read_text().splitlines()
    i = lines.index("[members]")
    lines[i + 1] = "7" if lines[i + 1] != "7" else "6"
    path.write_text("\n".join(lines) + "\n")
    code, _, stderr = run(capsys, "verify", "--design", str(path))
    assert code == 3
    assert "offender" in stderr


def test_verify_corrupted_enumeration_exits_2(tmp_path, capsys):
    out = str(tmp_path / "mcf")
    run(capsys, "construct", "mcfarland", "--q", "2", "--s", "1", "--out", out)
    path = tmp_path / "mcf.design.txt"
    lines = path.read_text().splitlines()
    i = lines.index("[elements]")
    lines[i + 1], lines[i + 2] = lines[i + 2], lines[i + 1]
    path.write_text("\n".join(lines) + "\n")
    code, _, stderr = run(capsys, "verify", "--design", str(path))
    assert code == 2
    assert "corrupted" in stderr


def test_parameter_error_exits_2(capsys):
    code, _, stderr = run(capsys, "construct", "mcfarland-odd",
                          "--q", "3", "--s", "1")
    assert code == 2
    assert "r+1 = 5 is not twice an odd prime" in stderr


def test_unknown_family_exits_2(capsys):
    code, _, stderr = run(capsys, "construct", "nosuch")
    assert code == 2 and "unknown family" in stderr


def test_missing_flag_exits_2(capsys):
    code, _, stderr = run(capsys, "construct", "spence")
    assert code == 2 and "requires --d" in stderr


def test_transfer_from_file(tmp_path, capsys):
    out = str(tmp_path / "sp")
    run(capsys, "construct", "spence", "--d", "1", "--out", out)
    code, stdout, _ = run(capsys, "transfer", "--design", out + ".design.txt",
                          "--out", str(tmp_path / "spt"))
    assert code == 0
    assert "condition (i): pass" in stdout
    assert "condition (iii): pass" in stdout
    assert "abelian = false" in stdout
    assert "DS(351,126,45) OK" in stdout
    # the transferred design file re-verifies
    code2, stdout2, _ = run(capsys, "verify", "--design",
                            str(tmp_path / "spt.design.txt"))
    assert code2 == 0 and "DS(351,126,45) OK" in stdout2


def test_transfer_via_family_flags(tmp_path, capsys):
    code, stdout, _ = run(capsys, "transfer", "--family", "denniston-gr4",
                          "--t", "2", "--k", "1",
                          "--out", str(tmp_path / "dgr"))
    assert code == 0
    assert "PDS(64,18,2,6) OK" in stdout


def test_identity_transfer_via_file(tmp_path, capsys):
    from diffsets import make_instance, pcp_pds
    from diffsets.serialize import design_text
    d = pcp_pds(2, 2, 2)
    inst = make_instance(d, [], [((), g) for g in d.group.generators])
    path = tmp_path / "ident.design.txt"
    path.write_text(design_text(d, inst))
    code, stdout, _ = run(capsys, "transfer", "--design", str(path),
                          "--out", str(tmp_path / "ident_t"))
    assert code == 0
    assert "abelian = true" in stdout
    assert "PDS(16,6,2,2) OK" in stdout


def test_hand_edited_transfer_gens_exit_3(tmp_path, capsys):
    out = str(tmp_path / "sp")
    run(capsys, "construct", "spence", "--d", "1", "--out", out)
    path = tmp_path / "sp.design.txt"
    lines = path.read_text().splitlines()
    # drop one candidate generator: the closure shrinks, condition (i) fails
    k = next(i for i, ln in enumerate(lines) if ln.startswith("gens = 4"))
    lines[k] = "gens = 3"
    del lines[next(i for i, ln in enumerate(lines) if ln.startswith("gen3 = "))]
    path.write_text("\n".join(lines) + "\n")
    code, _, stderr = run(capsys, "transfer", "--design", str(path),
                          "--out", str(tmp_path / "spt"))
    assert code == 3
    assert "condition" in stderr


def test_hand_edited_aut_images_exit_3(tmp_path, capsys):
    out = str(tmp_path / "sp")
    run(capsys, "construct", "spence", "--d", "1", "--out", out)
    path = tmp_path / "sp.design.txt"
    lines = path.read_text().splitlines()
    i = next(i for i, ln in enumerate(lines) if ln.startswith("aut0 = ")
             and "[transfer]" in lines[:i][-4:])
    head, _, imgs = lines[i].partition(" = ")
    vals = imgs.split(",")
    vals[0] = "5" if vals[0] != "5" else "6"
    lines[i] = f"{head} = " + ",".join(vals)
    path.write_text("\n".join(lines) + "\n")
    code, _, stderr = run(capsys, "transfer", "--design", str(path),
                          "--out", str(tmp_path / "spt"))
    assert code == 3


def test_transfer_failure_reports_witness(capsys, tmp_path):
    code, _, stderr = run(capsys, "transfer", "--family", "rds-transfer",
                          "--d", "2", "--out", str(tmp_path / "r"))
    assert code == 3
    assert "self-paired slots" in stderr


def test_export_edges_regularity(tmp_path, capsys):
    run(capsys, "transfer", "--family", "denniston-gr4", "--t", "2", "--k", "1",
        "--out", str(tmp_path / "dgr"))
    out = str(tmp_path / "dgr.edges")
    code, stdout, _ = run(capsys, "export", "--design",
                          str(tmp_path / "dgr.design.txt"),
                          "--format", "edges", "--out", out)
    assert code == 0
    assert "64 vertices" in stdout
    deg = {}
    for ln in (tmp_path / "dgr.edges").read_text().splitlines():
        if ln.startswith("#"):
            continue
        u, v = map(int, ln.split())
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    assert len(deg) == 64 and set(deg.values()) == {18}


def test_export_dot(tmp_path, capsys):
    run(capsys, "construct", "pcp", "--p", "2", "--n", "2", "--s", "2",
        "--out", str(tmp_path / "pcp"))
    code, stdout, _ = run(capsys, "export", "--design",
                          str(tmp_path / "pcp.design.txt"), "--format", "dot",
                          "--out", str(tmp_path / "pcp.dot"))
    assert code == 0
    text = (tmp_path / "pcp.dot").read_text()
    assert text.splitlines()[2].startswith("graph ")
    assert text.rstrip().endswith("}")


def test_missing_file_exits_2(capsys):
    code, _, stderr = run(capsys, "verify", "--design", "/nonexistent.txt")
    assert code == 2 and "cannot read" in stderr
