from __future__ import annotations

import pytest

from fernhex import verify as V
from fernhex.formulas import TotalsMismatch
from fernhex.params import Family, FernSeq, SweepBudget, parse_spec

TINY = SweepBudget(max_x=1, max_y=1, max_z=1, fern_alphabet=((), (1,)), max_area=60)


def test_report_bookkeeping():
    r = V.VerificationReport("t")
    r.add("spec", 1, 1)
    r.add("spec", 1, 2)
    assert r.instances_checked == 2 and not r.passed
    m = r.merge(V.VerificationReport("u", 3))
    assert m.instances_checked == 5 and len(m.failures) == 1
    d = m.to_dict()
    assert d["instances_checked"] == "5" and d["failures"][0]["rhs"] == "2"


def test_tiny_sweep_passes():
    rep = V.check_formula_vs_oracle(TINY)
    assert rep.instances_checked > 50
    assert rep.passed, rep.failures


def test_hexagon_only_sweep():
    rep = V.check_formula_vs_oracle(SweepBudget(max_x=3, max_y=3, max_z=3), families=[Family.HEXAGON])
    assert rep.passed and rep.instances_checked == 64


def test_cored_only_sweep():
    rep = V.check_formula_vs_oracle(SweepBudget(max_x=2, max_y=2, max_z=2), families=[Family.CORED])
    assert rep.passed and rep.instances_checked > 0


def test_sampled_sweep_is_reproducible():
    b = SweepBudget(max_x=2, max_y=1, max_z=2, max_area=60, sample=15, seed=7)
    a = [str(s) for s, _ in V.grid_specs(b)]
    assert a == [str(s) for s, _ in V.grid_specs(b)]
    assert len(a) <= 15


def test_eighteen_recurrences():
    assert len(V.RECURRENCE_IDS) == 18
    for rid in V.RECURRENCE_IDS:
        fam, cond, lhs, rhs = V.RECURRENCES[rid]
        assert len(lhs) == 2 and len(rhs) == 2 and all(len(p) == 2 for p in rhs)
        assert lhs[0][0] == fam or rid.startswith("Qne")


@pytest.mark.parametrize("rid", ["Rc-lt", "Rl-le", "Qne-lt"])
def test_figure_instances(rid):
    spec = parse_spec(V.FIGURE_INSTANCES[rid])
    assert V.check_kuo_recurrence(rid, spec).passed


@pytest.mark.parametrize("rid", [r for r in V.RECURRENCE_IDS if not r.startswith("Qnw")])
def test_recurrences_formula_mode(rid):
    b = SweepBudget(max_x=3, max_y=2, max_z=3, max_area=200)
    for s in V.recurrence_instances(rid, b, 6):
        assert V.check_kuo_recurrence(rid, s, mode="formula").passed, str(s)


@pytest.mark.parametrize("rid", [r for r in V.RECURRENCE_IDS if not r.startswith("Qnw")])
def test_companions_have_smaller_h(rid):
    b = SweepBudget(max_x=3, max_y=2, max_z=3, max_area=120)
    for s in V.recurrence_instances(rid, b, 3):
        assert min(V.companion_h_drop(rid, s)) >= 1


def test_side_condition_enforced():
    with pytest.raises(V.SideConditionViolated):
        V.check_kuo_recurrence("Rc-lt", parse_spec("Rc x=1 y=1 z=1 a=[2] c=[] b=[1]"))
    with pytest.raises(V.SideConditionViolated):
        V.check_kuo_recurrence("Rc-lt", parse_spec("Ql x=1 y=1 z=2 a=[] c=[] b=[1]"))


def test_extremal_reductions_small():
    rep = V.check_extremal_lemmas(TINY)
    assert rep.instances_checked > 0 and rep.passed, rep.failures


def test_forced_and_split_small():
    rep = V.check_forced_and_split(TINY)
    assert rep.instances_checked > 0 and rep.passed, rep.failures


def test_extremal_reduction_example():
    s = parse_spec("Rc x=1 y=0 z=1 a=[1] c=[1] b=[2]")
    red = V.extremal_reduction(s)
    assert red is not None and red.family is Family.Q_CENTER


def test_dual_degenerate_instance_is_exact():
    rows = V.check_dual_convergence((1, 1), (2,), (1, 1), 1, 1, (4, 8))
    for N, ratio, lim, err, exact in rows:
        assert lim == 1 and exact == 1 and err == 0


def test_dual_error_decreases():
    rows = V.check_dual_convergence((2,), (1, 1), (2,), 2, 1, (4, 8, 16, 24))
    errs = [r[3] for r in rows]
    assert all(e2 < e1 for e1, e2 in zip(errs, errs[1:]))


def test_dual_trivial_limit():
    rows = V.check_dual_convergence((), (1, 1), (), 1, 1, (4, 8))
    assert all(r[2] == 1 for r in rows)


def test_dual_totals_mismatch():
    with pytest.raises(TotalsMismatch):
        V.check_dual_convergence(FernSeq((1,)), (), FernSeq((2,)))
