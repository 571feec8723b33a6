import json
import math

import numpy as np
import pytest

from penergy.canon import canonical_graph
from penergy.enumeration import graph6_level
from penergy.graphs import Graph, family, graph6_encode
from penergy.verify import (
    CONJECTURES,
    CSV_COLUMNS,
    REGISTRY,
    GraphClassFilter,
    GraphData,
    conjecture_scan,
    conjecture_spec,
    extremal_table,
    fuzz_corpus,
    fuzz_graph_bipartitions,
    interlacing_slack,
    interlacing_suite,
    results_to_csv,
    results_to_json,
    verify_theorem,
)

P3 = graph6_encode(canonical_graph(family("path", 3)))
K3 = graph6_encode(family("complete", 3))
PAW = Graph.from_edges(4, [(0, 3), (1, 2), (1, 3), (2, 3)])


def test_registry_ids():
    for tid in ("pos4", "pos4_strong", "neg4", "dom4", "cliques4", "negp", "posp", "upper2",
                "star_bound", "interlacing", "scaling"):
        assert tid in REGISTRY
    assert REGISTRY["negp"].p_values == (4, 5, 6)
    assert set(CONJECTURES) == {"posp_path", "negp_complete", "s_plus"}


def test_filter():
    f = GraphClassFilter(non_complete=True, min_n=3)
    assert f.admits(family("path", 3))
    assert not f.admits(family("complete", 3))
    assert not f.admits(family("path", 2))
    assert not GraphClassFilter().admits(Graph.from_edges(3, [(0, 1)]))
    assert GraphClassFilter(clique_deletion=True).admits(PAW)
    assert not GraphClassFilter(clique_deletion=True).admits(family("cycle", 5))


def test_neg4_n3():
    res = verify_theorem("neg4", (3, 3))
    assert res.graphs_checked == 1
    assert res.min_slack == pytest.approx(1, abs=1e-10)
    assert res.min_slack_witness == P3
    assert res.passed and res.status == "pass"


def test_dom4_n3():
    res = verify_theorem("dom4", (3, 3))
    assert res.graphs_checked == 1
    assert res.min_slack_witness == P3
    assert abs(res.min_slack) < 1e-10


def test_dom4_n4_rejects_paw():
    res = verify_theorem("dom4_n4", (4, 4))
    assert [v.witness for v in res.violations] == [graph6_encode(canonical_graph(PAW))]
    assert res.min_slack == pytest.approx(1 + 1.4811943040920168 ** 4 - 6, abs=1e-9)
    assert res.status == "violations found"


def test_completeness_against_enumeration():
    res = verify_theorem("upper2", (1, 6))
    assert [r.graphs_checked for r in res.rows] == [len(graph6_level(n)) for n in range(1, 7)]


def test_filter_ranges_respected():
    res = verify_theorem("pos4_strong", (1, 6))
    assert [r.n for r in res.rows] == [5, 6]


def test_errors():
    with pytest.raises(KeyError):
        verify_theorem("nonsense")
    with pytest.raises(ValueError):
        verify_theorem("pos4", (3, 11))
    with pytest.raises(KeyError):
        conjecture_spec("nope", 2)
    with pytest.raises(ValueError):
        conjecture_spec("s_plus", 1.5)


def test_tolerance_override_flags_tight_graphs():
    res = verify_theorem("dom4", (3, 3), tol=-1.0)
    assert res.violations and res.violations[0].witness == P3


def test_near_zero_slack_rechecked():
    res = verify_theorem("dom4", (3, 4))
    assert any(g == P3 for g, _, _ in res.rechecked)
    assert res.sign_checks >= 1
    assert not res.sign_mismatches


def test_worker_count_does_not_change_reports():
    a = verify_theorem("neg4", (3, 7), workers=1)
    b = verify_theorem("neg4", (3, 7), workers=2)
    assert results_to_csv([a]) == results_to_csv([b])
    assert results_to_json([a]) == results_to_json([b])


def test_csv_and_json_shape():
    res = verify_theorem("neg4", (3, 4))
    lines = results_to_csv([res]).splitlines()
    assert lines[0].split(",") == CSV_COLUMNS
    assert lines[1].startswith("neg4,3,1,0,1,")
    assert lines[1].endswith(",")  # wall time omitted without timing
    d = json.loads(results_to_json([res]))
    assert d["graphs_checked"] == 6 and d["violations"] == [] and d["wall_time_s"] is None
    timed = json.loads(results_to_json([res], timing=True))
    assert timed["wall_time_s"] >= 0


def test_s_plus_n3():
    res = conjecture_scan("s_plus", 2, (3, 3))
    row = res.rows[0]
    assert row.graphs_checked == 2
    assert row.min_value == pytest.approx(2)
    assert row.value_witness == P3
    assert res.status == "no counterexample in range"


def test_posp_path_self_comparison():
    res = conjecture_scan("posp_path", 2, (2, 6))
    for row in res.rows:
        assert abs(row.min_slack) < 1e-9
    assert res.theorem_id == "posp_path@p=2"


def test_negp_complete_reference():
    res = conjecture_scan("negp_complete", 4, (4, 4))
    d = GraphData(family("complete", 4))
    assert d.energy(4).e_neg == pytest.approx(3)
    assert res.rows[0].graphs_checked == 6
    assert res.rows[0].min_value == pytest.approx(3)


def test_extremal_examples():
    (row,) = extremal_table(2, (3, 3), "pos")
    assert (row.min_energy, row.witness_g6) == (pytest.approx(2), P3)
    (row,) = extremal_table(4, (3, 3), "neg")
    assert (row.min_energy, row.witness_g6, row.graphs_compared) == (pytest.approx(4), P3, 1)
    (row,) = extremal_table(4, (4, 4), "pos")
    assert row.min_energy >= 16 / 3 and row.graphs_compared == 6
    with pytest.raises(ValueError):
        extremal_table(2, (3, 3), "both")


def test_interlacing_k3_and_edgeless():
    assert abs(interlacing_slack(GraphData(family("complete", 3)), 1)) < 1e-12  # -1 >= -1 is tight
    assert interlacing_slack(GraphData(family("edgeless", 4)), 1) == 0
    res = interlacing_suite((1, 6))
    assert res.passed


def test_scaling_suite_small():
    assert verify_theorem("scaling", (1, 6)).passed


def test_fuzz_block_diagonal_is_zero_gap():
    from penergy.pinching import BlockPartition, superadditivity_gap
    from penergy.spectra import SymmetricMatrix

    rng = np.random.default_rng(1)
    a = np.zeros((6, 6))
    for sl in (slice(0, 2), slice(2, 6)):
        b = rng.uniform(-1, 1, (sl.stop - sl.start,) * 2)
        a[sl, sl] = b + b.T
    for r in superadditivity_gap(SymmetricMatrix(a), BlockPartition((2, 4)), 3):
        assert abs(r.gap) < 1e-10


def test_fuzz_is_deterministic_and_clean():
    a = fuzz_corpus(300, max_n=8, seed=5)
    b = fuzz_corpus(300, max_n=8, seed=5)
    assert results_to_csv(a) == results_to_csv(b)
    assert all(r.passed for r in a)
    assert sum(r.graphs_checked for r in a[:1]) == 300
    h = fuzz_corpus(100, max_n=5, seed=5, hermitian=True)
    assert all(r.passed for r in h)
    assert h[0].theorem_id == "superadditivity:hermitian"
    with pytest.raises(ValueError):
        fuzz_corpus(0)


def test_graph_bipartitions_small():
    res = fuzz_graph_bipartitions(max_n=5)
    assert res.passed
    assert res.rows[0].graphs_checked == 1  # K2 has one bipartition


def test_min_slack_empty_result_is_inf():
    res = verify_theorem("pos4_strong", (1, 4))
    assert res.graphs_checked == 0 and math.isinf(res.min_slack)
