import math

import numpy as np
import pytest

from graph_spectra.catalog import (FIXTURES, SINGLE_TAIL_FIXTURES, Fixture, joukowski_pairs_from_roots,
                                   multiple_star_expected, run_fixture, t32_expected, t32_published_jost_eigenvalues,
                                   tree_expected, tree_published_jost_eigenvalues)
from graph_spectra.graph import InfiniteGraphSpec, TailSpec, build_complete, build_path, load_spec
from graph_spectra.solve import (canonical_form, canonical_spectrum, discrepancy, measure_of, neighbors_of,
                                 schur_spectrum, section_residuals)
from graph_spectra.spectrum import assemble_spectrum


@pytest.mark.parametrize("fx", FIXTURES, ids=lambda f: f.name)
def test_fixture_passes(fx):
    ok, worst, where = run_fixture(fx)
    assert ok, f"{fx.name}: {worst} at {where}"


def test_catalog_size_and_names():
    names = [f.name for f in FIXTURES]
    assert len(names) >= 15 and len(set(names)) == len(names)


def test_injected_failure_fails():
    ok, worst, _ = run_fixture(FIXTURES[0], inject_failure=True)
    assert not ok and worst >= 1e-3


def test_crashing_fixture_is_a_failure():
    def boom():
        raise RuntimeError("broken")
    ok, worst, where = run_fixture(Fixture("boom", boom))
    assert not ok and math.isinf(worst) and "RuntimeError" in where


def test_both_methods_agree_on_catalog():
    for spec in SINGLE_TAIL_FIXTURES.values():
        assert discrepancy(canonical_spectrum(spec), schur_spectrum(spec)) <= 1e-6


def test_published_jost_polynomials_disagree_with_entries():
    # the printed Jost polynomials give a different largest eigenvalue than the
    # stated Jacobi entries; the entries agree with the finite section
    assert max(t32_published_jost_eigenvalues()) == pytest.approx(2.0953, abs=1e-4)
    assert max(t32_expected()) == pytest.approx(2.076334, abs=1e-6)
    assert max(tree_expected()) == pytest.approx(2.296184, abs=1e-6)
    assert max(tree_published_jost_eigenvalues()) == pytest.approx(2.1661, abs=1e-4)


def test_multiple_star_expected_is_symmetric():
    e = multiple_star_expected(3, 2)
    assert sorted(e) == pytest.approx(sorted(-x for x in e))


def test_discrepancy():
    a = assemble_spectrum([(-2, 2, 1)], [(2.5, 1), (-2.5, 1)], [])
    b = assemble_spectrum([(-2, 2, 1)], [(2.5 + 1e-7, 1), (-2.5, 1)], [])
    c = assemble_spectrum([(-2, 2, 1)], [(2.5, 1)], [])
    assert discrepancy(a, b) == pytest.approx(1e-7)
    assert math.isinf(discrepancy(a, c))


def test_canonical_form_dispatch():
    g = build_complete(3)
    cf = canonical_form(InfiniteGraphSpec(g, (TailSpec(3), TailSpec(3))))
    assert cf.free_copies == 1
    cf = canonical_form(InfiniteGraphSpec(g, (TailSpec(1), TailSpec(2), TailSpec(3))))
    assert len(cf.jacobi_components) == 3
    with pytest.raises(ValueError, match="named family"):
        canonical_form(InfiniteGraphSpec(build_path(3), (TailSpec(1), TailSpec(3))))


def test_sparse_family_specs():
    sp = canonical_spectrum(load_spec({"family": {"id": "sparse-ladder", "params": {"rungs": [1, 3, 9, 27]}}}))
    pts = sorted(b.lo for b in sp.bands if b.degenerate)
    assert pts == pytest.approx([-math.sqrt(5), math.sqrt(5)], abs=1e-12)
    sp = canonical_spectrum(load_spec({"family": {"id": "sparse-cycle-chain", "params": {"sizes": [2, 4, 8]}}}))
    pts = sorted(b.lo for b in sp.bands if b.degenerate)
    assert pts == pytest.approx([-4 / math.sqrt(3), 4 / math.sqrt(3)], abs=1e-12)


def test_closed_form_families():
    sp = canonical_spectrum(load_spec({"family": {"id": "toeplitz", "params": {"alpha": [1, 1]}}}))
    assert sp.band_union() == [pytest.approx((-2.25, 4.0), abs=1e-12)]
    assert len(canonical_spectrum(load_spec({"family": {"id": "comb"}})).band_union()) == 2


def test_schur_rejects_families_and_weights():
    with pytest.raises(ValueError):
        schur_spectrum(load_spec({"family": {"id": "comb"}}))
    with pytest.raises(ValueError, match="unit-weight"):
        schur_spectrum(InfiniteGraphSpec(build_path(2), (TailSpec(2, bridge=2),)))


def test_section_residuals():
    spec = SINGLE_TAIL_FIXTURES["star-5"]
    res = section_residuals(spec, canonical_spectrum(spec), 800)
    assert len(res) == 2 and max(res.values()) < 1e-8
    comb = load_spec({"family": {"id": "comb"}})
    assert section_residuals(comb, canonical_spectrum(comb), 50) == {}
    sparse = load_spec({"family": {"id": "sparse-ladder", "params": {"rungs": [1]}}})
    assert neighbors_of(sparse) is None
    with pytest.raises(ValueError):
        section_residuals(sparse, canonical_spectrum(sparse), 10)


def test_measure_of_rejects_families():
    with pytest.raises(ValueError):
        measure_of(load_spec({"family": {"id": "complete-ladder"}}))
    mu = measure_of(SINGLE_TAIL_FIXTURES["star-5"])
    assert mu.total_mass() == pytest.approx(1, abs=1e-10)
