from __future__ import annotations

import csv
import json

import numpy as np
import pytest

from hfe_alias import io
from hfe_alias.alias import recover_alias
from hfe_alias.attack import PlantedConfig, planted_summary, planted_trials, run_attack
from hfe_alias.cli import loglog_slope, main
from hfe_alias.forms import reduce_alias
from hfe_alias.gfext import FieldParams
from hfe_alias.hfe import HfeParams, encrypt, keygen
from hfe_alias.toy import run_toy, toy_public_key


@pytest.fixture
def keys(tmp_path):
    sk, pk = tmp_path / "sk.json", tmp_path / "pk.json"
    assert main(["keygen", "--p", "2", "--n", "3", "--d", "6", "--seed", "5",
                 "--out-private", str(sk), "--out-public", str(pk)]) == 0
    return sk, pk


def test_keygen_prints_cost_and_is_deterministic(tmp_path, keys, capsys):
    sk, pk = keys
    first = (sk.read_text(), pk.read_text())
    capsys.readouterr()
    main(["keygen", "--p", "2", "--n", "3", "--d", "6", "--seed", "5",
          "--out-private", str(sk), "--out-public", str(pk)])
    out = capsys.readouterr().out
    assert "W = 7" in out and "W^3 = 343" in out
    assert (sk.read_text(), pk.read_text()) == first
    for path in keys:
        doc = json.loads(path.read_text())
        assert (doc["format_version"], doc["p"], doc["n"]) == (1, 2, 3)


def test_key_documents_round_trip():
    for p, n, d in [(2, 3, 6), (2, 7, 40), (3, 3, 12)]:
        sk, pk = keygen(HfeParams(FieldParams.default(p, n), d, 1))
        sk2 = io.private_from_json(json.loads(json.dumps(io.private_to_json(sk))))
        assert io.private_to_json(sk2) == io.private_to_json(sk)
        assert sk2.f == sk.f and sk2.S == sk.S and sk2.T == sk.T
        assert np.array_equal(sk2.basis.matrix, sk.basis.matrix)
        assert io.public_from_json(json.loads(json.dumps(io.public_to_json(pk)))) == pk
        al = recover_alias(pk)
        al2 = io.alias_from_json(json.loads(json.dumps(io.alias_to_json(al))))
        assert al2.A == al.A and al2.points_used == al.points_used
        if p == 2:
            rk = reduce_alias(al)
            rk2 = io.reduced_from_json(json.loads(json.dumps(io.reduced_to_json(rk))))
            assert rk2.F_prime == rk.F_prime and rk2.P_total == rk.P_total and rk2.r == rk.r


def test_wrong_format_version_rejected():
    _, pk = keygen(HfeParams(FieldParams.default(2, 3), 6, 1))
    doc = io.public_to_json(pk)
    doc["format_version"] = 2
    with pytest.raises(ValueError):
        io.public_from_json(doc)


def test_encrypt_decrypt_round_trip(keys, capsys):
    sk, pk = keys
    assert main(["encrypt", "--public", str(pk), "--msg", "1,0,1"]) == 0
    ct = capsys.readouterr().out.strip()
    assert main(["decrypt", "--private", str(sk), "--ct", ct]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert "1 0 1" in lines


def test_decrypt_outside_image_exits_2(keys, capsys):
    sk, pk = keys
    doc = io.load(pk)
    image = set()
    for v in np.array(np.meshgrid(*[[0, 1]] * 3)).T.reshape(-1, 3):
        image.add(tuple(encrypt(io.public_from_json(doc), v).tolist()))
    missing = [c for c in np.array(np.meshgrid(*[[0, 1]] * 3)).T.reshape(-1, 3) if tuple(c.tolist()) not in image]
    if not missing:
        pytest.skip("this key is a permutation")
    code = main(["decrypt", "--private", str(sk), "--ct", " ".join(map(str, missing[0]))])
    assert code == 2
    assert "not in image" in capsys.readouterr().err


def test_recover_reduce_attack(tmp_path, keys, capsys):
    _, pk = keys
    al, rk = tmp_path / "al.json", tmp_path / "rk.json"
    assert main(["recover-alias", "--public", str(pk), "--out", str(al)]) == 0
    doc = json.loads(al.read_text())
    assert {"A", "points_used", "achieved_rank", "convention", "format_version", "p", "n"} <= doc.keys()
    assert main(["reduce", "--alias", str(al), "--out", str(rk)]) == 0
    doc = json.loads(rk.read_text())
    assert doc["constant_preserved"] is True
    assert {"F_prime", "P_total", "r", "degree"} <= doc.keys()
    capsys.readouterr()
    assert main(["attack", "--public", str(pk), "--ct", "0,1,1"]) == 0
    lines = [json.loads(x) for x in capsys.readouterr().out.strip().splitlines()]
    assert "status" in lines[-1]
    pub = io.public_from_json(io.load(pk))
    for row in lines[:-1]:
        assert encrypt(pub, row["candidate"]).tolist() == [0, 1, 1]


def test_attack_on_toy_reports_printed_alias_status(tmp_path, capsys):
    pk = tmp_path / "toy.json"
    io.dump(io.public_to_json(toy_public_key()), pk)
    assert main(["attack", "--public", str(pk), "--ct", "0,0,1"]) == 0
    summary = json.loads(capsys.readouterr().out.strip().splitlines()[-1])
    assert summary["printed_alias_reproduced"] is False


def test_demo_toy_is_deterministic(capsys):
    assert main(["demo-toy"]) == 0
    a = capsys.readouterr().out
    main(["demo-toy"])
    b = capsys.readouterr().out
    assert a == b
    lines = a.strip().splitlines()
    assert [ln.split(":")[0] for ln in lines] == ["system-consistency", "convention-match", "alias-verification"]


def test_toy_verdict_content():
    v = run_toy()
    # the printed system does solve to the printed alias, despite one misprinted power
    assert v.system_matches_printed
    assert v.matrix_discrepancies == [(4, 6, "t^2+1", "t^2+t")]
    assert v.matching_conventions == []
    assert all(v.alias_verified.values())
    assert not any(v.printed_alias_verified.values())


def test_usage_errors_exit_1(tmp_path, capsys):
    assert main(["encrypt", "--public", str(tmp_path / "missing.json"), "--msg", "1"]) == 1
    with pytest.raises(SystemExit) as e:
        main(["no-such-command"])
    assert e.value.code == 1


def test_bench_writes_csv(tmp_path, capsys):
    out = tmp_path / "b.csv"
    assert main(["bench", "--n-min", "4", "--n-max", "7", "--trials", "2", "--out-csv", str(out)]) == 0
    with open(out) as fh:
        rows = list(csv.DictReader(fh))
    assert list(rows[0].keys()) == ["n", "W", "wall_ms", "mults"]
    m = [int(r["mults"]) for r in rows]
    assert m == sorted(m) and len(set(m)) == len(m)
    assert "slope(mults)" in capsys.readouterr().out


def test_loglog_slope_of_power_law():
    ns = np.arange(8, 33)
    assert abs(loglog_slope(ns, ns.astype(float) ** 6) - 6) < 1e-9


def test_run_attack_candidates_verify():
    sk, pk = keygen(HfeParams(FieldParams.default(2, 6), 8, 3))
    for v in ([0] * 6, [1, 0, 1, 1, 0, 1]):
        ct = encrypt(pk, v)
        res = run_attack(pk, ct)
        assert res.status == "ok"
        for c in res.candidates:
            assert np.array_equal(encrypt(pk, c), ct)


def test_planted_records_are_sound():
    recs = planted_trials(PlantedConfig(n_values=(4, 5), trials=10, seed=1))
    s = planted_summary(recs)
    assert s["overall"]["soundness"] == 1.0
    assert set(s["per_n"]) == {4, 5}
    assert all(r.candidates <= r.preimages for r in recs)
