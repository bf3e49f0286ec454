import math

import pytest

from radquant import registry as reg


def test_class_counts_sum_to_173():
    assert sum(reg.CLASS_COUNTS.values()) == 173
    assert len(reg.all_features()) == 173


def test_per_class_counts():
    want = {
        reg.CLS_MORPH: 29, reg.CLS_LOCINT: 2, reg.CLS_STAT: 18,
        reg.CLS_HIST: 23, reg.CLS_IVH: 7, reg.CLS_GLCM: 25,
        reg.CLS_GLRLM: 16, reg.CLS_GLSZM: 16, reg.CLS_GLDZM: 16,
        reg.CLS_NGTDM: 5, reg.CLS_NGLDM: 16,
    }
    for cls, n in want.items():
        assert len(reg.class_features(cls)) == n


def test_ids_unique_and_prefixed():
    ids = reg.all_features()
    assert len(set(ids)) == len(ids)
    for fid in ids:
        assert reg.class_of(fid) in reg.CLASS_COUNTS
        assert fid.split(".", 1)[1]


def test_category_partition():
    cats = set(reg.CATEGORY_OF_CLASS.values())
    assert cats == {"morphology", "statistic/histogram", "texture"}
    per_cat = {c: 0 for c in cats}
    for cls, n in reg.CLASS_COUNTS.items():
        per_cat[reg.CATEGORY_OF_CLASS[cls]] += n
    assert per_cat == {"morphology": 29, "statistic/histogram": 50,
                       "texture": 94}


def test_feature_set_rejects_unknown_and_duplicates():
    fs = reg.FeatureSet()
    fid = reg.feature_id(reg.CLS_GLCM, "contrast")
    fs.add(fid, 1.0)
    with pytest.raises(ValueError):
        fs.add(fid, 2.0)
    with pytest.raises(KeyError):
        fs.add("glcm.not_a_feature", 1.0)


def test_add_undefined_is_nan_flagged():
    fs = reg.FeatureSet()
    fid = reg.feature_id(reg.CLS_STAT, "skewness")
    fs.add_undefined(fid)
    value = fs[fid]
    assert math.isnan(value.value)
    assert value.flag == "undefined"
    assert not value.defined
