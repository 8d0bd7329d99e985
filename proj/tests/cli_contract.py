"""Command-line contract: outputs, schemas, exit codes, determinism."""

import csv
import io
import json
import math
import pathlib
import subprocess
import sys
import tempfile

import jsonschema

CLI = sys.argv[1]
SCHEMAS = pathlib.Path(sys.argv[2])
failures = []


def schema(name):
    return json.loads((SCHEMAS / f"{name}.schema.json").read_text())


def run(*args, expect=0):
    p = subprocess.run([CLI, *map(str, args)], capture_output=True, text=True)
    if p.returncode != expect:
        raise AssertionError(f"{' '.join(map(str, args))}: exit {p.returncode}, wanted {expect}\n{p.stderr}")
    return p


def check(name, fn):
    try:
        fn()
        print(f"ok   {name}")
    except Exception as e:  # noqa: BLE001
        failures.append(name)
        print(f"FAIL {name}: {e}")


def read_csv(text):
    lines = text.splitlines()
    assert lines[0].startswith("# meta: "), "missing meta header"
    meta = json.loads(lines[0][len("# meta: "):])
    rows = list(csv.reader(io.StringIO("\n".join(lines[1:]))))
    assert rows[0][:2] == ["T", "value"], rows[0]
    return meta, [[float(x) for x in r] for r in rows[1:]]


def thermal_w1_at_zero():
    out = run("curve", "--source", "thermal", "--gamma", 1, "--nbar", 0.01, "--eta", 1, "--kind", "w",
              "--n", 1, "--tmax", 10, "--points", 400, "--engine", "exact").stdout
    meta, rows = read_csv(out)
    assert meta["source"] == "thermal" and meta["kind"] == "w"
    assert rows[0][0] == 0.0 and abs(rows[0][1] - 0.04) < 1e-12, rows[0]
    assert len(rows) == 400


def coherent_p1_exponential():
    out = run("curve", "--source", "coherent", "--flux", 1, "--kind", "P", "--n", 1, "--tmax", 5,
              "--points", 51, "--engine", "exact", "--format", "json").stdout
    j = json.loads(out)
    jsonschema.validate(j, schema("curve"))
    assert abs(j["values"][0] - 1.0) < 1e-12
    for t, v in zip(j["T"], j["values"]):
        assert abs(v - math.exp(-t)) < 1e-10 * max(1.0, v)


def rf_w2_peak():
    out = run("curve", "--source", "rf", "--beta", 1, "--rabi", 1, "--kind", "w", "--n", 2, "--tmax", 15,
              "--points", 1501, "--engine", "closed:exact-n").stdout
    _, rows = read_csv(out)
    t_peak = max(rows, key=lambda r: r[1])[0]
    assert abs(t_peak - 5.0) < 0.011, t_peak


def exit_codes():
    run("curve", "--source", "coherent", "--kind", "w", "--n", 9, "--tmax", 1, "--points", 3, expect=2)
    run("curve", "--source", "laser", "--kind", "w", "--n", 1, "--tmax", 1, "--points", 3, expect=2)
    run("curve", "--source", "coherent", "--flux", 1e7, "--kind", "p", "--n", 3, "--tmax", 1, "--points", 3,
        expect=3)
    run("figure", 9, "--outdir", tempfile.mkdtemp(), expect=2)
    run("curve", "--bogus-flag", expect=2)


def simulate_deterministic():
    args = ("simulate", "--source", "rf", "--beta", 1, "--rabi", 1, "--duration", 2e5, "--seed", 1, "--eta", 0.5)
    a, b = run(*args).stdout, run(*args).stdout
    assert a == b, "repeated simulate output differs"
    times = [float(x) for x in a.splitlines() if x and not x.startswith("#")]
    rate = len(times) / 2e5
    assert abs(rate - 1.0 / 6.0) < 4.0 * math.sqrt(1.0 / 6.0 / 2e5) + 2e-3, rate
    c = run("simulate", "--source", "rf", "--beta", 1, "--rabi", 1, "--duration", 2e5, "--seed", 2,
            "--eta", 0.5).stdout
    assert c != a, "different seeds gave identical records"


def estimate_contract():
    with tempfile.TemporaryDirectory() as d:
        rec = pathlib.Path(d) / "coh.txt"
        rec.write_text(run("simulate", "--source", "coherent", "--flux", 1, "--duration", 2e5, "--seed", 7).stdout)
        m = json.loads(run("estimate", "--events", rec, "--moments", "--n", 1).stdout)
        jsonschema.validate(m, schema("moments"))
        assert abs(m["mean"] - 1.0) < 4 * m["mean_err"] and abs(m["variance"] - 1.0) < 4 * m["variance_err"], m
        j = json.loads(run("estimate", "--events", rec, "--kind", "w", "--n", 1, "--format", "json").stdout)
        jsonschema.validate(j, schema("curve"))
        within = sum(abs(v - math.exp(-t)) <= 3 * s for t, v, s in zip(j["T"], j["values"], j["stderr"]))
        assert within >= 0.95 * len(j["T"]), (within, len(j["T"]))
        pc = json.loads(run("estimate", "--events", rec, "--kind", "p", "--window", 1, "--nmax", 10,
                            "--format", "json").stdout)
        for k, (p, s) in enumerate(zip(pc["values"], pc["stderr"])):
            ref = math.exp(-1.0) / math.factorial(k)
            assert abs(p - ref) <= 3 * s + 1e-12, (k, p, ref, s)
        bad = pathlib.Path(d) / "bad.txt"
        bad.write_text("# duration 10\n0.5\n1.5\n1.25\n2\n")
        p = run("estimate", "--events", bad, "--kind", "w", "--n", 1, expect=4)
        assert f"{bad}:4" in p.stderr, p.stderr
        junk = pathlib.Path(d) / "junk.txt"
        junk.write_text("# duration 10\n0.5\nabc\n")
        p = run("estimate", "--events", junk, "--kind", "w", "--n", 1, expect=4)
        assert f"{junk}:3" in p.stderr, p.stderr


def figure_manifest():
    with tempfile.TemporaryDirectory() as d:
        for index, count in ((7, 6), (1, 12)):
            out = pathlib.Path(d) / f"fig{index}"
            run("figure", index, "--outdir", out, "--points", 100)
            m = json.loads((out / "manifest.json").read_text())
            jsonschema.validate(m, schema("manifest"))
            assert m["verdict"] == "PASS", [c for c in m["checks"] if not c["pass"]]
            csvs = sorted(p.name for p in out.glob("*.csv"))
            assert len(csvs) == count and sorted(m["files"]) == csvs, csvs
            for s in m["series"]:
                meta, rows = read_csv((out / s["file"]).read_text())
                assert meta["source"] == s["source"] and len(rows) == 100


def compare_verdicts():
    v = json.loads(run("compare", "--source", "coherent", "--flux", 1, "--kind", "w", "--n", 2, "--tmax", 10,
                       "--points", 200, "--engine-a", "exact", "--engine-b", "closed:exact-n",
                       "--rel-tol", 1e-10).stdout)
    jsonschema.validate(v, schema("verdict"))
    assert v["verdict"] == "PASS" and v["max_rel_err"] < 1e-10, v
    v = json.loads(run("compare", "--source", "thermal", "--gamma", 1, "--nbar", 10, "--kind", "w", "--n", 1,
                       "--tmax", 0.25, "--points", 101, "--engine-a", "exact", "--engine-b", "closed:large",
                       "--rel-tol", 0.05).stdout)
    jsonschema.validate(v, schema("verdict"))
    assert v["verdict"] == ("PASS" if v["max_rel_err"] <= 0.05 else "FAIL"), v
    print(f"     thermal nbar=10 exact vs closed:large w1 max rel err {v['max_rel_err']:.3g}")
    with tempfile.TemporaryDirectory() as d:
        diff = pathlib.Path(d) / "diff.csv"
        v = json.loads(run("compare", "--source", "rf", "--beta", 1, "--rabi", 1, "--kind", "w", "--n", 1,
                           "--tmax", 8, "--points", 60, "--engine-a", "closed:exact-n", "--engine-b", "mc",
                           "--events", 3e5, "--seed", 5, "--diff-out", diff).stdout)
        jsonschema.validate(v, schema("verdict"))
        assert v["bins"] > 0 and v["verdict"] == ("PASS" if v["fraction_within_2sigma"] >= 0.95 else "FAIL"), v
        assert diff.read_text().startswith("T,a,b,difference\n")
        print(f"     rf exact-n vs mc w1 fraction within 2 stderr {v['fraction_within_2sigma']:.3g}")


for name, fn in [("thermal w1(0) = 2 eta I", thermal_w1_at_zero),
                 ("coherent P1 exponential", coherent_p1_exponential),
                 ("rf w2 peak at 5/beta", rf_w2_peak),
                 ("exit codes", exit_codes),
                 ("simulate determinism and thinning", simulate_deterministic),
                 ("estimate outputs and format errors", estimate_contract),
                 ("figure manifests", figure_manifest),
                 ("compare verdicts", compare_verdicts)]:
    check(name, fn)

sys.exit(1 if failures else 0)
