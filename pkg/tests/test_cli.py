import json
import subprocess
import sys

import jsonschema
import pytest

from affinelink import cli, linkage
from affinelink.level import Level
from affinelink.rootsys import Weight, root_system
from affinelink.schemas import SCHEMAS


def run(capsys, *argv):
    code = cli.main(list(argv) + ["--json"])
    out = capsys.readouterr().out
    doc = json.loads(out) if out.strip() else None
    if doc is not None:
        jsonschema.validate(doc, SCHEMAS[argv[0]])
    return code, doc


class TestExamples:
    def test_check_star_found(self, capsys):
        code, doc = run(capsys, "check-star", "--rs", "A1", "--level", "generic",
                        "--from", "3/1", "--to", "-3/1")
        assert code == 0 and len(doc["chain"]["steps"]) == 1

    def test_check_star_not_found(self, capsys):
        code, doc = run(capsys, "check-star", "--rs", "A1", "--level", "generic",
                        "--from", "3/1", "--to", "1/1")
        assert code == 3 and doc["chain"] is None

    def test_critical_level(self, capsys):
        assert cli.main(["check-star", "--rs", "A1", "--level", "0/1",
                         "--from", "3", "--to", "1"]) == 2
        assert "critical" in capsys.readouterr().err

    def test_verify_kk(self, capsys):
        code, doc = run(capsys, "verify-kk", "--rs", "A1", "--level", "-2/1",
                        "--hw", "4/1", "--depth", "4")
        assert code == 0 and doc["ok"] and doc["missing"] == [] and doc["extra"] == []

    def test_phi_at_rho(self, capsys):
        code, doc = run(capsys, "phi", "--rs", "A1", "--level", "generic", "--weight", "1/1")
        assert code == 0 and doc["value"] == "0"

    def test_affine_weight(self, capsys):
        code, doc = run(capsys, "affine-weight", "--rs", "A1", "--level", "1/1", "--weight", "0")
        assert code == 0 and doc["affine_weight"]["level"] == "-1"

    def test_blocks_box(self, capsys):
        code, doc = run(capsys, "blocks", "--rs", "A1", "--level", "-2/1", "--box", "4")
        assert code == 0
        members = [sorted(int(m[0]) for m in b["members"]) for b in doc["blocks"]]
        # W x 2Q-vee orbits on [-4, 4]: k ~ -k and k ~ k + 4
        assert sorted(members) == [[-4, 0, 4], [-3, -1, 1, 3], [-2, 2]]

    def test_blocks_single_weight(self, capsys):
        code, doc = run(capsys, "blocks", "--rs", "A1", "--level", "-2/1", "--weights", "3")
        assert code == 0 and len(doc["blocks"]) == 1

    def test_blocks_mixed_integrality(self, capsys):
        assert cli.main(["blocks", "--rs", "A1", "--level", "-2/1", "--weights", "1;1/2"]) == 2

    def test_blocks_linked_relation(self, capsys):
        code, doc = run(capsys, "blocks", "--rs", "A1", "--level", "generic",
                        "--weights", "3;-3;1;-5", "--relation", "linked")
        assert code == 0
        assert sorted(len(b["members"]) for b in doc["blocks"]) == [1, 1, 2]


@pytest.mark.parametrize("argv", [
    ["linked", "--rs", "A1", "--level", "-2/1", "--from", "0", "--to", "4"],
    ["linkage-class", "--rs", "A2", "--level", "generic", "--weight", "1,1"],
    ["subquotients", "--rs", "A1", "--level", "-2/1", "--weight", "4", "--max-m", "3"],
    ["casimir", "--rs", "B2", "--weight", "1,0"],
    ["l0", "--rs", "A1", "--level", "-2/1", "--weight", "2", "--depth", "3"],
    ["l0", "--rs", "A1", "--level", "generic", "--weight", "2", "--l0-convention", "ph"],
    ["verify-kk", "--rs", "A1", "--level", "generic", "--hw", "1/2", "--depth", "2"],
    ["selftest"],
])
def test_every_command_emits_valid_json(capsys, argv):
    code, doc = run(capsys, *argv)
    assert code == 0 and doc["command"] == argv[0]


@pytest.mark.parametrize("argv", [
    ["check-star", "--rs", "A1", "--from", "1"],
    ["check-star", "--rs", "Q9", "--from", "1", "--to", "2"],
    ["phi", "--rs", "A2", "--weight", "1"],
    ["phi", "--rs", "A1", "--weight", "x/y"],
    ["linked", "--rs", "A1", "--from", "1", "--to", "2", "--max-chain", "-1"],
    ["frobnicate"],
])
def test_usage_errors(capsys, argv):
    assert cli.main(argv) == 2


def test_plain_text_output(capsys):
    assert cli.main(["check-star", "--rs", "A1", "--from", "3", "--to", "-3"]) == 0
    out = capsys.readouterr().out
    assert out.startswith("chain of length 1")


def test_out_file_round_trip_reverifies(tmp_path, capsys):
    path = tmp_path / "cert.json"
    code = cli.main(["check-star", "--rs", "A1", "--level", "-2/1", "--from", "5",
                     "--to", "-3", "--max-m", "3", "--out", str(path)])
    assert code == 0
    capsys.readouterr()
    doc = json.loads(path.read_text(encoding="utf-8"))
    jsonschema.validate(doc, SCHEMAS["check-star"])
    chain = linkage.StarChain.from_json(doc["chain"])
    rs = root_system(doc["rs"])
    level = Level.parse(doc["level"])
    linkage.verify_chain(rs, level, chain)
    assert chain.source == Weight([5]) and chain.target == Weight([-3])


def test_job_config_round_trip():
    cfg = cli.JobConfig("blocks", "A1", "-2/1", {"box": "4", "relation": "rational"})
    assert cli.JobConfig.from_dict(json.loads(json.dumps(cfg.to_dict()))) == cfg
    with pytest.raises(cli.UsageError):
        cli.JobConfig("linked", "A1", "generic", {"depth": -1})


def test_negative_values_are_glued():
    argv = cli.normalize_argv(["check-star", "--from", "-3", "--to", "-1/2,4"])
    assert argv == ["check-star", "--from=-3", "--to=-1/2,4"]


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "affinelink", "phi", "--rs", "A1",
                           "--level", "-2/1", "--weight", "2"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and proc.stdout.strip() == "-3/4"
