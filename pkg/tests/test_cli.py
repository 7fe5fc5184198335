import json

import pytest

from capforge.cli import main


def run(args):
    return main(args)


def test_construct_verify_lift_export_pipeline(tmp_path):
    arc = tmp_path / "arc.json"
    assert run(["construct", "--q", "31", "--m", "5", "--M", "2,3", "--out", str(arc)]) == 0
    d = json.loads(arc.read_text())
    assert len(d["points"]) == 12 and d["m"] == 5 and d["M"] == [2, 3]

    rep = tmp_path / "rep.json"
    # q = 31 is far below every gate: verdict false, exit 1
    assert run(["verify", str(arc), "--mode", "full", "--out", str(rep)]) == 1
    r = json.loads(rep.read_text())
    assert r["verdict"] is False and r["mode"] == "full"

    cap = tmp_path / "cap.json"
    assert run(["lift", str(arc), "--N", "4", "--out", str(cap)]) == 0
    c = json.loads(cap.read_text())
    assert len(c["points"]) == 12 * 31 and c["N"] == 4 and c["qprime"] == 31

    # cap files are dispatched to the completeness engine
    vrep = tmp_path / "vrep.json"
    assert run(["verify", str(cap), "--out", str(vrep)]) == 1
    assert json.loads(vrep.read_text())["verdict"] is False

    base = tmp_path / "pc"
    assert run(["export", str(cap), "--out", str(base)]) == 0
    pc = json.loads((tmp_path / "pc.json").read_text())
    k = 12 * 31
    assert pc["code"] == [k, k - 5, 4]
    csv_rows = (tmp_path / "pc.csv").read_text().strip().split("\n")
    assert len(csv_rows) == 5 and len(csv_rows[0].split(",")) == k
    # round trip: decoded columns equal the cap points
    cols = pc["columns"]
    assert sorted(tuple(c[1:]) for c in cols) == sorted(tuple(p) for p in c["points"])


def test_exit_codes(tmp_path):
    # usage error: bad gcd
    assert run(["construct", "--q", "31", "--m", "6", "--M", "1,2"]) == 2
    # malformed input
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(["verify", str(bad)]) == 2
    # not a prime power
    assert run(["construct", "--q", "12", "--m", "5"]) == 2


def test_construct_single_coset_and_auto(tmp_path):
    out = tmp_path / "arc.json"
    assert run(["construct", "--q", "31", "--m", "5", "--t", "2", "--out", str(out)]) == 0
    d = json.loads(out.read_text())
    assert len(d["points"]) == 6 and len(d["M"]) == 1
    assert run(["construct", "--q", "71", "--m", "35", "--M", "auto", "--strict", "--out", str(out)]) == 0
    d = json.loads(out.read_text())
    assert len(d["points"]) == len(d["M"]) * 2


def test_sampled_determinism(tmp_path):
    arc = tmp_path / "arc.json"
    run(["construct", "--q", "31", "--m", "5", "--M", "2,3", "--out", str(arc)])
    r1 = tmp_path / "r1.json"
    r2 = tmp_path / "r2.json"
    run(["verify", str(arc), "--mode", "sampled", "--sample", "128", "--seed", "5", "--out", str(r1)])
    run(["verify", str(arc), "--mode", "sampled", "--sample", "128", "--seed", "5", "--out", str(r2)])
    assert r1.read_bytes() == r2.read_bytes()


def test_scan_formats(tmp_path):
    out = tmp_path / "scan.csv"
    assert run(["scan", "--q-list", "31,71,93811", "--N-list", "4", "--format", "csv", "--out", str(out)]) == 0
    rows = out.read_text().strip().split("\n")
    assert rows[0].startswith("q,m,m1,m2,exact,quartic,arc_bound")
    body = [r.split(",") for r in rows[1:]]
    assert all(int(r[0]) in (31, 71, 93811) for r in body)
    lookup = {(int(r[0]), int(r[1]), int(r[2]), int(r[3])): r for r in body}
    # q = 93811, m = 5 passes both gates; bound = 6 * 18762
    r = lookup[(93811, 5, 1, 5)]
    assert r[4] == "true" and r[5] == "true" and int(r[6]) == 112572
    # m = 35 at q = 71 lists the (5, 7) split and fails the gates
    r = lookup[(71, 35, 5, 7)]
    assert r[4] == "false" and r[5] == "false"
    out2 = tmp_path / "scan.json"
    assert run(["scan", "--q-list", "31", "--format", "json", "--out", str(out2)]) == 0
    data = json.loads(out2.read_text())
    assert all(row["q"] == 31 for row in data)


def test_count_command(tmp_path):
    out = tmp_path / "count.json"
    assert run(["count", "--q", "31", "--m", "5", "--a", "0", "--b", "1", "--t", "2",
                "--target", "f", "--out", str(out)]) == 0
    d = json.loads(out.read_text())
    assert d["count"] == 51 and d["in_window"] is True
    assert run(["count", "--q", "10007", "--a", "3", "--b", "7", "--t", "2",
                "--target", "quartic", "--out", str(out)]) == 0
    d = json.loads(out.read_text())
    assert d["genus_bound"] == 1 and d["in_window"] is True
    # t an m-th power is invalid for the coset-structured count
    assert run(["count", "--q", "31", "--m", "5", "--a", "0", "--b", "1", "--t", "1",
                "--target", "f"]) == 2


def test_search_indep_command(tmp_path):
    out = tmp_path / "indep.json"
    assert run(["search-indep", "--m", "5", "--out", str(out)]) == 0
    d = json.loads(out.read_text())
    assert d["flags"]["maximal"] and len(d["members"]) == 2
    assert run(["search-indep", "--m1", "5", "--m2", "7", "--out", str(out)]) == 0
    d = json.loads(out.read_text())
    assert d["m"] == 35 and len(d["members"]) <= 12
    assert run(["search-indep", "--m", "1"]) == 1


def test_construct_theorem_scale(tmp_path):
    # q primality is verified in-run by the prime-power resolution
    out = tmp_path / "big.json"
    assert run(["construct", "--q", "93811", "--m", "5", "--M", "2,3", "--out", str(out)]) == 0
    d = json.loads(out.read_text())
    assert len(d["points"]) == 37524
    assert run(["construct", "--q", "93810", "--m", "5", "--M", "2,3"]) == 2  # composite


def test_extension_field_flags(tmp_path):
    out = tmp_path / "ext.json"
    assert run(["construct", "--p", "5", "--h", "2", "--m", "8", "--M", "1,3", "--out", str(out)]) == 0
    d = json.loads(out.read_text())
    assert d["q"] == 25 and len(d["points"]) == 6


def test_construct_determinism(tmp_path):
    a1 = tmp_path / "a1.json"
    a2 = tmp_path / "a2.json"
    run(["construct", "--q", "31", "--m", "5", "--M", "2,3", "--out", str(a1)])
    run(["construct", "--q", "31", "--m", "5", "--M", "2,3", "--out", str(a2)])
    assert a1.read_bytes() == a2.read_bytes()
