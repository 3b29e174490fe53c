import pytest

from aloops import constructions as C
from aloops.analysis import are_isomorphic
from aloops.associated import PropertyId, has_property, heisenberg_algebra, linear_loop, read_algebra
from aloops.cli import run
from aloops.errors import InternalCheckFailed
from aloops.perm import format_generators
from aloops.analysis import mlt
from aloops.table import q6, read_table, write_table
from conftest import GROUPS_DIR


@pytest.fixture
def q6_file(tmp_path):
    path = tmp_path / "q6.loop"
    write_table(q6(), path)
    return path


def invoke(capsys, *argv):
    code = run([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, out, err


class TestCheck:
    def test_q6(self, capsys, q6_file):
        code, out, _ = invoke(capsys, "check", q6_file)
        assert code == 0
        assert "automorphic=true nonassociative=true" in out
        lines = dict(ln.split("=", 1) for ln in out.splitlines()[1:])
        assert lines["lip"] == "false" and lines["aaip"] == "true"
        assert lines["middle_nucleus"] == "{1,4,5}" and lines["nilpotency_class"] == "none"
        assert lines["mlt_order"] == "36"

    def test_byte_stable(self, capsys, q6_file):
        first = invoke(capsys, "check", q6_file)[1]
        assert invoke(capsys, "check", q6_file)[1] == first

    def test_trivial(self, capsys, tmp_path):
        path = tmp_path / "trivial.loop"
        path.write_text("1\n1\n")
        code, out, _ = invoke(capsys, "check", path)
        assert code == 0 and "simple=false" in out.splitlines()[0]
        props = dict(ln.split("=", 1) for ln in out.splitlines()[1:])
        assert all(props[p.value] == "true" for p in PropertyId)

    def test_bad_table(self, capsys, tmp_path):
        path = tmp_path / "bad.loop"
        path.write_text("2\n1 2\n2 2\n")
        code, _, err = invoke(capsys, "check", path)
        assert code == 1 and "NotLatin" in err

    def test_missing_file(self, capsys, tmp_path):
        assert invoke(capsys, "check", tmp_path / "none.loop")[0] == 1


class TestConstruct:
    def test_qab(self, capsys, tmp_path):
        out = tmp_path / "q.loop"
        code, _, _ = invoke(capsys, "construct", "qab", "--n", 3, "--a", 1, "--b", 2, "-o", out)
        assert code == 0
        assert out.read_text().startswith("# construction=qab n=3 a=1 b=2")
        assert read_table(out) == C.q_ab(3, 1, 2)

    def test_dih_stdout(self, capsys):
        code, out, _ = invoke(capsys, "construct", "dih", "--m", 2, "--n", 3, "--alpha", -1)
        assert code == 0
        from aloops.table import parse_table
        assert are_isomorphic(parse_table(out), q6()) is not None

    def test_drapal(self, capsys, tmp_path):
        out = tmp_path / "d.loop"
        assert invoke(capsys, "construct", "drapal", "--p", 5, "--t", 2, "-o", out)[0] == 0
        assert read_table(out).n == 15
        code, _, err = invoke(capsys, "construct", "drapal", "--p", 5, "--t", 3)
        assert code == 1 and "conditions fail" in err
        assert invoke(capsys, "construct", "drapal", "--p", 9, "--t", 2)[0] == 1

    def test_fieldext_and_cyclic(self, capsys, tmp_path):
        out = tmp_path / "f.loop"
        assert invoke(capsys, "construct", "fieldext", "--p", 3, "--a", 1, "-o", out)[0] == 0
        assert read_table(out) == C.field_ext_loop(3, 1)
        assert invoke(capsys, "construct", "cyclic", "--n", 5, "-o", out)[0] == 0
        assert read_table(out) == C.cyclic(5)


class TestAssociate:
    def test_bruck_and_gamma(self, capsys, tmp_path):
        src, b, g = tmp_path / "d.loop", tmp_path / "b.loop", tmp_path / "g.loop"
        write_table(C.drapal(5, 2), src)
        assert invoke(capsys, "associate", "bruck", src, "-o", b)[0] == 0
        assert has_property(read_table(b), "left_bruck")
        assert invoke(capsys, "associate", "gamma", b, "-o", g)[0] == 0
        assert read_table(g) == read_table(src)

    def test_lie(self, capsys, tmp_path):
        src, alg = tmp_path / "h.loop", tmp_path / "h.alg"
        H = heisenberg_algebra(3)
        write_table(linear_loop(H), src)
        assert invoke(capsys, "associate", "lie", src, "-o", alg)[0] == 0
        assert read_algebra(alg) == H

    def test_failed_precondition(self, capsys, tmp_path, q6_file):
        src = tmp_path / "q.loop"
        write_table(C.q_ab(3, 0, 0), src)
        code, _, err = invoke(capsys, "associate", "lie", src)
        assert code == 1 and "BruckNotAbelian" in err
        code, _, err = invoke(capsys, "associate", "gamma", q6_file)
        assert code == 1 and "NotLeftBruck" in err


class TestEnumerate:
    def test_naive(self, capsys, tmp_path):
        code, out, _ = invoke(capsys, "enumerate", "--order", 4, "--filter", "associative",
                              "--out-dir", tmp_path / "reps")
        assert code == 0 and out.startswith("# tables=4 classes=2")
        assert len(list((tmp_path / "reps").glob("*.loop"))) == 2

    def test_automorphic_six(self, capsys):
        code, out, _ = invoke(capsys, "enumerate", "--order", 6, "--naive", "--filter", "automorphic")
        assert code == 0 and "classes=3" in out.splitlines()[0]

    def test_bound(self, capsys):
        code, _, err = invoke(capsys, "enumerate", "--order", 7)
        assert code == 2 and "resource limit" in err
        assert invoke(capsys, "enumerate", "--order", 3, "--naive-max", 2)[0] == 2

    def test_group(self, capsys, tmp_path):
        gens = tmp_path / "mlt.gens"
        gens.write_text(format_generators(mlt(q6()).generators))
        code, out, _ = invoke(capsys, "enumerate", "--order", 6, "--group", gens)
        assert code == 0 and out.startswith("# tables=4")
        assert invoke(capsys, "enumerate", "--order", 5, "--group", gens)[0] == 1

    def test_group_cap(self, capsys, tmp_path):
        gens = tmp_path / "mlt.gens"
        gens.write_text(format_generators(mlt(q6()).generators))
        assert invoke(capsys, "enumerate", "--order", 6, "--group", gens, "--group-cap", 10)[0] == 2


class TestCensus:
    @pytest.mark.parametrize("argv, head", [
        (["2p", "--p", 3], "classes=3 nonassociative=1"),
        (["2p", "--p", 5], "classes=5 nonassociative=3"),  # Z10 and D10 are the groups
        (["pq", "--p", 5, "--q", 3], "classes=1 nonassociative=1"),
        (["pq", "--p", 11, "--q", 7], "classes=0 nonassociative=0"),
        (["fieldext", "--p", 3], "classes=2 nonassociative=2"),
    ])
    def test_counts(self, capsys, argv, head):
        code, out, _ = invoke(capsys, "census", *argv)
        assert code == 0 and out.splitlines()[0] == head
        assert out.splitlines()[1].startswith("order,label,multiplicity")

    def test_p3(self, capsys, tmp_path):
        code, out, _ = invoke(capsys, "census", "p3", "--p", 3, "--out-dir", tmp_path)
        assert code == 0 and out.splitlines()[0] == "classes=7 nonassociative=4"
        assert len(list(tmp_path.glob("rep_27_*.loop"))) == 7

    def test_budget(self, capsys):
        assert invoke(capsys, "census", "p3", "--p", 3, "--aut-budget", 3)[0] == 2


class TestSimpleHunt:
    def test_degree6(self, capsys):
        code, out, _ = invoke(capsys, "simple-hunt", "--order", 6, "--groups", GROUPS_DIR)
        assert code == 0 and out.splitlines()[-2] == "catalog=0"
        assert "# filtered s6: 4-transitive" in out
        assert "# searched pgl2_5: loops=0" in out

    def test_jobs_deterministic(self, capsys):
        one = invoke(capsys, "simple-hunt", "--order", 6, "--groups", GROUPS_DIR)[1]
        two = invoke(capsys, "simple-hunt", "--order", 6, "--groups", GROUPS_DIR, "--jobs", 2)[1]
        assert one == two

    def test_cap_skips(self, capsys):
        code, out, _ = invoke(capsys, "simple-hunt", "--order", 6, "--groups", GROUPS_DIR, "--group-cap", 100)
        assert code == 0 and "# skipped" in out

    def test_odd(self, capsys):
        assert invoke(capsys, "simple-hunt", "--order", 5, "--groups", GROUPS_DIR)[0] == 1


def test_internal_failure_exit_code(capsys, q6_file, monkeypatch):
    import aloops.cli as cli

    def boom(*a, **k):
        raise InternalCheckFailed("forced")
    monkeypatch.setattr(cli, "analysis_report", boom)
    code, _, err = invoke(capsys, "check", q6_file)
    assert code == 3 and "internal check failed" in err


def test_subcommand_required():
    with pytest.raises(SystemExit):
        run([])
