import pytest

from tests.samples import COMMUTATOR, THETA, W2
from wicks_forms.bounds import rooted_maximal_count
from wicks_forms.enumeration import (
    Catalog,
    CatalogStore,
    OrbitSearch,
    brute_force_classes,
    catalog_from_words,
    catalog_io,
    catalog_summary,
    enumerate_wicks,
    parse_catalog,
    read_catalog,
    rooted_count,
    write_catalog,
)
from wicks_forms.errors import CatalogFormatError, EnumerationRefused
from wicks_forms.surface import canonical_form, glue, validate_wicks
from wicks_forms.words import CyclicWord, word_key


def assert_catalog_invariants(catalog):
    keys = [form.sort_key for form in catalog.forms]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)
    for form in catalog.forms:
        report = validate_wicks(form)
        assert report.passed
        assert report.genus == catalog.genus
        assert canonical_form(form) == form
        graph = glue(form)
        # 欧拉公式 v - e + 1 = 2 - 2g
        assert graph.vertex_count - graph.edge_count + 1 == 2 - 2 * catalog.genus
        assert min(graph.degrees) >= 3


# ==================== 亏格 1 ====================


def test_genus_one_full_catalog(genus1_full):
    assert genus1_full.complete
    assert [form.letters for form in genus1_full.forms] == [COMMUTATOR, THETA]
    assert_catalog_invariants(genus1_full)


def test_genus_one_matches_brute_force(genus1_full):
    brute = brute_force_classes(1, 4) | brute_force_classes(1, 6)
    assert set(genus1_full.forms) == brute


def test_genus_one_maximal_catalog(genus1_maximal):
    assert [form.letters for form in genus1_maximal.forms] == [THETA]
    assert rooted_count(genus1_maximal) == rooted_maximal_count(1) == 1


def test_length_four_only_has_commutator():
    catalog = enumerate_wicks(1, length_range=(4, 4), workers=1)
    assert [form.letters for form in catalog.forms] == [COMMUTATOR]
    assert not catalog.complete


def test_parallel_search_matches_sequential(genus1_full):
    parallel = enumerate_wicks(1, workers=2)
    assert parallel == genus1_full


# ==================== 亏格 2 ====================


def test_genus_two_maximal_catalog(genus2_maximal):
    assert genus2_maximal.complete
    assert_catalog_invariants(genus2_maximal)
    assert all(len(form) == 18 for form in genus2_maximal.forms)
    assert canonical_form(W2) in genus2_maximal.forms
    assert rooted_count(genus2_maximal) == rooted_maximal_count(2) == 105
    assert len(genus2_maximal) == 9


@pytest.mark.slow
def test_genus_two_full_catalog(genus2_full, genus2_maximal):
    assert genus2_full.complete
    assert_catalog_invariants(genus2_full)
    lengths = {len(form) for form in genus2_full.forms}
    assert lengths <= set(range(8, 19, 2))
    longest = [form for form in genus2_full.forms if len(form) == 18]
    assert longest == list(genus2_maximal.forms)


def test_search_counts_rooted_words():
    search = OrbitSearch(6, 1)
    search.run()
    assert search.found == {THETA}
    assert not search.timed_out


def test_time_budget_marks_incomplete():
    catalog = enumerate_wicks(2, maximal_only=True, workers=1, time_budget=0.0)
    assert not catalog.complete


# ==================== 参数检查 ====================


@pytest.mark.parametrize(
    "kwargs",
    [
        {"genus": 0},
        {"genus": 3},
        {"genus": 4, "allow_long": True},
        {"genus": 1, "length_range": (5, 6)},
        {"genus": 1, "length_range": (2, 6)},
        {"genus": 2, "length_range": (8, 20)},
    ],
)
def test_enumeration_refusals(kwargs):
    with pytest.raises(EnumerationRefused):
        enumerate_wicks(workers=1, **kwargs)


# ==================== 统计 ====================


def test_catalog_summary(genus1_full):
    df = catalog_summary(genus1_full)
    assert list(df.columns) == ["length", "vertices", "classes", "rooted"]
    assert df["length"].tolist() == [4, 6]
    assert df["vertices"].tolist() == [1, 2]
    assert df["classes"].tolist() == [1, 1]
    assert df["rooted"].tolist() == [1, 1]


def test_catalog_summary_empty():
    df = catalog_summary(Catalog(1, False))
    assert df.empty


# ==================== 目录文件 ====================


def test_catalog_round_trip(tmp_path, genus1_full):
    path = tmp_path / "g1.cat"
    catalog_io(path, "write", genus1_full)
    assert path.read_text().splitlines()[0] == "wicks-catalog genus=1 maximal=0 complete=1 count=2"
    assert catalog_io(path, "read") == genus1_full


def test_empty_catalog_round_trip(tmp_path):
    empty = Catalog(2, True, (), False)
    path = tmp_path / "empty.cat"
    write_catalog(path, empty)
    assert read_catalog(path) == empty


def test_catalog_rejects_wrong_genus():
    text = "wicks-catalog genus=2 maximal=0 complete=1 count=1\n1 2 -1 -2\n"
    with pytest.raises(CatalogFormatError) as info:
        parse_catalog(text)
    assert info.value.line == 2


@pytest.mark.parametrize(
    "text, line",
    [
        ("", 1),
        ("not-a-catalog genus=1\n", 1),
        ("wicks-catalog genus=1 maximal=0 complete=1\n", 1),
        ("wicks-catalog genus=1 maximal=0 complete=1 count=1\n1 x\n", 2),
        ("wicks-catalog genus=1 maximal=1 complete=1 count=1\n1 2 -1 -2\n", 2),
        ("wicks-catalog genus=1 maximal=0 complete=1 count=1\n2 1 -2 -1\n", 2),
        ("wicks-catalog genus=1 maximal=0 complete=1 count=2\n1 2 3 -1 -2 -3\n1 2 -1 -2\n", 3),
        ("wicks-catalog genus=1 maximal=0 complete=1 count=3\n1 2 -1 -2\n", 1),
    ],
)
def test_catalog_format_errors(text, line):
    with pytest.raises(CatalogFormatError) as info:
        parse_catalog(text)
    assert info.value.line == line


def test_catalog_io_rejects_unknown_mode(tmp_path):
    with pytest.raises(ValueError):
        catalog_io(tmp_path / "x.cat", "append")


# ==================== 目录缓存 ====================


def test_catalog_store_persists(tmp_path):
    store = CatalogStore(tmp_path, workers=1)
    first = store.get(1)
    assert (tmp_path / "genus1_full.cat").exists()
    assert store.get(1) is first

    reloaded = CatalogStore(tmp_path, workers=1).get(1)
    assert reloaded == first


def test_catalog_store_uses_preloaded(genus1_full):
    store = CatalogStore()
    store.put(genus1_full)
    assert store.get(1) is genus1_full


def test_catalog_entries_are_cyclic_words(genus1_full):
    assert all(isinstance(form, CyclicWord) for form in genus1_full)
    assert [word_key(f) for f in genus1_full] == sorted(word_key(f) for f in genus1_full)


def test_catalog_from_words_merges_isomorphic_words(genus1_full):
    words = [(2, 3, 1, -2, -3, -1), (1, 2, -1, -2), THETA, (-1, -2, 1, 2)]
    catalog = catalog_from_words(1, False, words, True)
    assert catalog.forms == genus1_full.forms
    assert [str(f) for f in catalog] == ["1 2 -1 -2", "1 2 3 -1 -2 -3"]
