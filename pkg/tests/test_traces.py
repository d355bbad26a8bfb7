import random
from fractions import Fraction

from permdeg import catalog
from permdeg.verify import (
    double_transitive_trace,
    jordan_bound_trace,
    mathieu_bound_table,
    quadruple_transitive_trace,
    triple_transitive_trace,
)


def by_label(report):
    return {c.label: c for c in report.checks}


def test_jordan_m12_tight():
    trace = jordan_bound_trace(catalog.builtin("mathieu", 12))
    assert trace.applicable and trace.degenerate is None
    assert trace.case == 1 and trace.prime == 2
    assert (trace.m, trace.t) == (8, 5)
    bound = {c.label: c for c in trace.checks}["jordan-bound"]
    assert bound.observed == 8 and bound.formula == 8   # tight: m = 2t - 2
    assert trace.all_pass()
    assert trace.conclusion_holds


def test_jordan_m24_case1():
    trace = jordan_bound_trace(catalog.builtin("mathieu", 24))
    assert trace.applicable and trace.degenerate is None and trace.case == 1
    assert trace.all_pass()


def test_jordan_m11_degenerate_but_bound_holds():
    trace = jordan_bound_trace(catalog.builtin("mathieu", 11))
    assert trace.applicable
    assert trace.degenerate is not None          # t multiple of p: image pinned
    assert trace.remainder == trace.prime - 1
    assert trace.conclusion_holds                # 8 >= 2*4 - 2 = 6
    assert trace.all_pass()


def test_jordan_psl27_case2_constructive():
    trace = jordan_bound_trace(catalog.builtin("psl2", 7))
    assert trace.applicable and trace.degenerate is None
    assert trace.case == 2 and trace.prime == 3 and trace.remainder == 1
    assert trace.mover is not None
    assert trace.all_pass()


def test_jordan_inapplicable_for_alternating_containers():
    trace = jordan_bound_trace(catalog.builtin("symmetric", 7))
    assert not trace.applicable
    assert trace.m == 2
    assert trace.conclusion_holds is None


def test_jordan_trivial_group():
    from permdeg.groups import PermutationGroup
    trace = jordan_bound_trace(PermutationGroup([], 5))
    assert not trace.applicable


def test_double_trace_identity_cross_multiplied():
    for name in ("PGL2_7", "PSL2_7", "M11", "M12"):
        report = double_transitive_trace(catalog.parse_group_name(name))
        assert report.applicable and report.all_pass(), name
        # |F| (n-1) == |E| (n-m) re-verified from the recorded sizes
        size_e = report.sizes["orbit"]
        size_f = report.sizes["fixing"]
        assert size_f * (report.n - 1) == size_e * (report.n - report.m), name


def test_double_trace_m11_closing_bound():
    report = double_transitive_trace(catalog.builtin("mathieu", 11))
    bound = by_label(report)["degree-bound"]
    assert bound.observed == 11
    assert bound.formula == Fraction(166, 5)   # 4m + 6/(m-3) at m = 8
    assert report.conclusion_holds


def test_double_trace_symmetric_gates_conclusion():
    report = double_transitive_trace(catalog.builtin("symmetric", 5))
    assert report.applicable
    assert report.derived["contains_alternating"] is True
    assert report.conclusion_holds is None
    assert by_label(report)["fixing-count-identity"].passed
    assert "degree-bound" not in by_label(report)


def test_double_trace_inapplicable_low_transitivity():
    report = double_transitive_trace(catalog.builtin("cyclic", 6))
    assert not report.applicable


def test_triple_trace_identity_cross_multiplied():
    for name in ("PGL2_7", "M11", "M12"):
        report = triple_transitive_trace(catalog.parse_group_name(name))
        assert report.applicable and report.all_pass(), name
        size_e = report.sizes["orbit"]
        pairs = report.sizes["overlap_pairs"]
        lhs = pairs * (report.n - 2)
        rhs = size_e * ((report.n - 2) + (report.m - 1) * (report.m - 2))
        assert lhs == rhs, name


def test_triple_trace_m23_third_bound():
    report = triple_transitive_trace(catalog.builtin("mathieu", 23))
    checks = by_label(report)
    assert checks["third-bound"].observed == 48   # 3m with m = 16
    assert checks["third-bound"].passed
    assert report.conclusion_holds


def test_triple_trace_needs_three_transitivity():
    assert not triple_transitive_trace(catalog.builtin("psl2", 7)).applicable


def test_quadruple_trace_m11_shifted_form():
    report = quadruple_transitive_trace(catalog.builtin("mathieu", 11))
    assert report.applicable and report.all_pass()
    assert report.derived["m_shift"] == 5
    assert report.derived["n_shift"] == 8
    assert report.derived["vertex"] == Fraction(103, 10)
    assert report.derived["slack_poly"] == 3409
    checks = by_label(report)
    assert checks["shifted-threshold-bound"].passed
    assert checks["degree-window"].observed == 8
    assert report.conclusion_holds


def test_quadruple_trace_m24_window():
    report = quadruple_transitive_trace(catalog.builtin("mathieu", 24))
    checks = by_label(report)
    assert checks["degree-window"].observed == 21
    assert checks["degree-window"].formula == 32
    assert checks["minimal-degree-at-least-six"].passed
    assert report.all_pass()


def test_quadruple_trace_gates_alternating():
    report = quadruple_transitive_trace(catalog.builtin("symmetric", 8))
    assert not report.applicable


def test_traces_deterministic():
    g = catalog.builtin("mathieu", 11)
    a = triple_transitive_trace(g)
    b = triple_transitive_trace(g)
    assert a.checks == b.checks
    assert a.witnesses == b.witnesses


def test_traces_random_choice_mode():
    g = catalog.builtin("mathieu", 11)
    for seed in range(3):
        rng = random.Random(seed)
        report = double_transitive_trace(g, rng=rng)
        assert report.all_pass(), seed
        rng = random.Random(seed)
        report = triple_transitive_trace(g, rng=rng)
        assert report.all_pass(), seed
        rng = random.Random(seed)
        report = quadruple_transitive_trace(g, rng=rng)
        assert report.all_pass(), seed
        rng = random.Random(seed)
        trace = jordan_bound_trace(g, rng=rng)
        assert trace.all_pass(), seed


def test_jordan_to_report():
    report = jordan_bound_trace(catalog.builtin("mathieu", 12)).to_report()
    assert report.name == "jordan"
    assert report.derived["case"] == 1
    assert "u" in report.witnesses and "v" in report.witnesses


def test_mathieu_bound_table_rows():
    rows = mathieu_bound_table()
    got = [(r.n, r.m, r.bound) for r in rows]
    assert got == [(11, 8, 6), (12, 8, 6), (23, 16, 10), (24, 16, 11)]
    assert all(r.ok for r in rows)
    assert [r.t for r in rows] == [4, 5, 4, 5]


def test_every_trace_on_every_mathieu_group():
    from permdeg.verify import TRACES

    for k in (11, 12, 23, 24):
        g = catalog.builtin("mathieu", k)
        for name, build in TRACES.items():
            result = build(g)
            assert result.applicable, (k, name)
            assert result.all_pass(), (k, name)


def test_jordan_psl2_11_odd_prime_case2():
    trace = jordan_bound_trace(catalog.builtin("psl2", 11))
    assert trace.case == 2 and trace.prime == 5 and trace.remainder == 1
    assert trace.degenerate is None
    assert trace.all_pass()


def test_jordan_psl2_13_degenerate_shift():
    trace = jordan_bound_trace(catalog.builtin("psl2", 13))
    assert trace.case == 2 and trace.prime == 2
    assert trace.degenerate is not None
    assert trace.conclusion_holds    # 12 >= 2*2 - 2


def test_traces_on_file_loaded_group(tmp_path):
    from permdeg.catalog import load_generator_file, save_generator_file

    path = tmp_path / "m11.perm"
    save_generator_file(catalog.builtin("mathieu", 11), path)
    loaded = load_generator_file(path)
    report = quadruple_transitive_trace(loaded)
    assert report.applicable and report.all_pass()
    assert report.m == 8
