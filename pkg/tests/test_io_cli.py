"""JSON round trips, schema errors, and the CLI exit-code contract."""

import json

import pytest

from contramod import io as cio
from contramod.cli import DEFAULT_SEED, JobSpec, main, run
from contramod.coalgebra import divided_power_dual, divided_power_surjection, grouplike
from contramod.comodule import cofree, comodule_over_self, dual_comodule
from contramod.contramodule import free_contramodule
from contramod.fields import GF2, GF3, QQ
from contramod.io import SchemaError


def test_field_json_roundtrip():
    assert cio.field_from_json(cio.field_to_json(QQ)) == QQ
    assert cio.field_from_json(cio.field_to_json(GF2)) == GF2
    with pytest.raises(SchemaError):
        cio.field_from_json({"Fp": 4})
    assert cio.parse_field_flag("Fp:3") == GF3
    with pytest.raises(SchemaError):
        cio.parse_field_flag("R")


def test_mat_json_roundtrip():
    from contramod.matrix import Mat

    m = Mat.from_entries(2, 3, QQ, [(0, 1, "1/2"), (1, 2, -3)])
    back = cio.mat_from_json(cio.mat_to_json(m), QQ)
    assert back == m


def test_coalgebra_json_roundtrip():
    for c in (grouplike(GF2, 3), divided_power_dual(QQ, 3)):
        back = cio.coalgebra_from_json(cio.coalgebra_to_json(c))
        assert back.delta == c.delta and back.epsilon == c.epsilon


def test_comodule_and_contramodule_roundtrip():
    c = divided_power_dual(GF3, 3)
    for m in (comodule_over_self(c), cofree(c, 2), dual_comodule(cofree(c, 1))):
        back = cio.comodule_from_json(cio.comodule_to_json(m))
        assert back.coaction == m.coaction and back.side == m.side
    b = free_contramodule(c, 2)
    back = cio.contramodule_from_json(cio.contramodule_to_json(b))
    assert back.theta == b.theta


def test_named_coalgebra_resolution():
    c = cio.coalgebra_from_json("grouplike(3)", GF2)
    assert c.dim == 3
    with pytest.raises(SchemaError):
        cio.coalgebra_from_json("nonsense(1)", GF2)
    with pytest.raises(SchemaError):
        cio.coalgebra_from_json("grouplike(3)")  # no field to resolve against


def test_detect_and_load():
    c = divided_power_dual(QQ, 2)
    assert cio.detect_and_load(cio.coalgebra_to_json(c)).dim == 2
    m = cio.detect_and_load(cio.comodule_to_json(comodule_over_self(c)))
    assert m.side == "left"
    b = cio.detect_and_load(cio.contramodule_to_json(free_contramodule(c, 1)))
    assert b.dim == 2
    rho = divided_power_surjection(QQ, 3, 2, 2)
    assert cio.detect_and_load(cio.morphism_to_json(rho)).surjective


def _write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(json.dumps(payload))
    return str(path)


def test_cli_verify_ok_and_exit_codes(tmp_path, capsys):
    c = grouplike(QQ, 3)
    path = _write(tmp_path, "c.json", cio.coalgebra_to_json(c))
    assert main(["verify", path]) == 0
    report = json.loads(capsys.readouterr().out)
    assert report["ok"] and report["kind"] == "coalgebra"
    # corrupt the counit: check failure, exit 1
    bad = cio.coalgebra_to_json(c)
    bad["epsilon"] = ["0", "1", "1"]
    path_bad = _write(tmp_path, "bad.json", bad)
    assert main(["verify", path_bad]) == 1
    # schema violation: exit 2 with a pointer to the offending field
    broken = {"dim": 2, "delta": [[0, 0, 0, "1", "extra"]], "epsilon": ["1", "1"]}
    path_broken = _write(tmp_path, "broken.json", broken)
    assert main(["verify", path_broken]) == 2
    report = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert "delta" in report["error"] or "input" in report["error"]


def test_cli_hom_cotensor_cohom(tmp_path, capsys):
    c = divided_power_dual(GF2, 3)
    reg = comodule_over_self(c)
    reg_r = comodule_over_self(c, side="right")
    free = free_contramodule(c, 1)
    m_path = _write(tmp_path, "m.json", cio.comodule_to_json(reg))
    mr_path = _write(tmp_path, "mr.json", cio.comodule_to_json(reg_r))
    b_path = _write(tmp_path, "b.json", cio.contramodule_to_json(free))
    assert main(["hom", m_path, m_path]) == 0
    out = json.loads(capsys.readouterr().out)
    assert out["dim"] == 3
    assert main(["cotensor", mr_path, m_path]) == 0
    assert json.loads(capsys.readouterr().out)["dim"] == 3
    assert main(["cohom", m_path, b_path]) == 0
    assert json.loads(capsys.readouterr().out)["dim"] == 3
    assert main(["contratensor", mr_path, b_path]) == 0
    assert json.loads(capsys.readouterr().out)["dim"] == 3
    # mismatched coalgebras: input error
    c2 = grouplike(GF2, 2)
    other = _write(tmp_path, "o.json", cio.comodule_to_json(comodule_over_self(c2)))
    assert main(["hom", m_path, other]) == 2


def test_cli_induce_and_adjoint(tmp_path, capsys):
    rho = divided_power_surjection(GF3, 3, 2, 2)
    rho_path = _write(tmp_path, "rho.json", cio.morphism_to_json(rho))
    w = free_contramodule(rho.target, 1)
    w_path = _write(tmp_path, "w.json", cio.contramodule_to_json(w))
    v = free_contramodule(rho.source, 1)
    v_path = _write(tmp_path, "v.json", cio.contramodule_to_json(v))
    assert main(["induce", "--rho", rho_path, "--W", w_path]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["dim_induced"] == 3 and rep["axioms_ok"]
    assert main(["adjoint-check", "--rho", rho_path, "--W", w_path, "--V", v_path]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["adjunction"]["lhs_dim"] == rep["adjunction"]["rhs_dim"]
    assert rep["roundtrip_ok"]


def test_cli_exactness_witness_and_sampling(tmp_path, capsys):
    rho = divided_power_surjection(GF2, 3, 2, 2)
    rho_path = _write(tmp_path, "rho.json", cio.morphism_to_json(rho))
    # explicit witness: 0 -> k -> D* -> k -> 0 over the target
    from contramod.contramodule import contra_closure, sub_contramodule, quotient_contramodule

    breg = free_contramodule(rho.target, 1)
    rad = contra_closure(breg, [{1: GF2.one()}])
    sub, incl = sub_contramodule(breg, rad)
    quot, proj = quotient_contramodule(breg, rad)
    ses_payload = {
        "sub": cio.contramodule_to_json(sub),
        "mid": cio.contramodule_to_json(breg),
        "quot": cio.contramodule_to_json(quot),
        "incl": cio.mat_to_json(incl),
        "proj": cio.mat_to_json(proj),
    }
    ses_path = _write(tmp_path, "ses.json", ses_payload)
    code = main(["exactness", "--rho", rho_path, "--ses", ses_path])
    rep = json.loads(capsys.readouterr().out)
    assert code == 1
    assert rep["exactness"]["failures"][0]["positions"] == ["left"]
    # sampling mode runs and reports totals
    code = main(["--seed", "7", "exactness", "--rho", rho_path, "--samples", "5"])
    rep = json.loads(capsys.readouterr().out)
    assert rep["exactness"]["total"] == 5
    assert code in (0, 1)


def test_cli_duality(tmp_path, capsys):
    c = divided_power_dual(QQ, 3)
    v_path = _write(tmp_path, "v.json", cio.comodule_to_json(comodule_over_self(c)))
    w_path = _write(tmp_path, "w.json", cio.comodule_to_json(cofree(c, 1)))
    assert main(["duality", "--V", v_path, "--W", w_path]) == 0
    rep = json.loads(capsys.readouterr().out)
    assert rep["ok"] and rep["cohom_dim"] == rep["hom_dim"] == rep["pairing_rank"]


def test_cli_tower(tmp_path, capsys):
    battery = _write(tmp_path, "battery.json", ["L0", "L1"])
    code = main(["tower", "--p", "2", "--lambda", "0", "--mmax", "2", "--battery", battery])
    rep = json.loads(capsys.readouterr().out)
    assert code == 0
    assert rep["all_match"]
    dims = {t["module"]: [s["dim_cohom"] for s in t["stages"]] for t in rep["towers"]}
    assert dims["L0"] == [1, 1]
    assert dims["L1"][-1] == 0


def test_cli_determinism(tmp_path):
    rho = divided_power_surjection(GF2, 3, 2, 2)
    rho_path = _write(tmp_path, "rho.json", cio.morphism_to_json(rho))
    out1 = tmp_path / "r1.json"
    out2 = tmp_path / "r2.json"
    main(["--seed", "11", "--out", str(out1), "exactness", "--rho", rho_path, "--samples", "4"])
    main(["--seed", "11", "--out", str(out2), "exactness", "--rho", rho_path, "--samples", "4"])
    assert out1.read_bytes() == out2.read_bytes()
    # pretty never changes the payload
    out3 = tmp_path / "r3.json"
    main(["--seed", "11", "--pretty", "--out", str(out3), "exactness", "--rho", rho_path, "--samples", "4"])
    assert json.loads(out3.read_text()) == json.loads(out1.read_text())


def test_run_jobspec_directly():
    job = JobSpec(command="verify", inputs={"input": "/nonexistent.json"})
    code, report = run(job)
    assert code == 2 and "not found" in report["error"]
    assert report["seed"] == DEFAULT_SEED
