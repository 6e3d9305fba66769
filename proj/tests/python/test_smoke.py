# Copyright 2026 The dermbench Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import json
import os
from pathlib import Path

import numpy as np
import pytest

import dermbench as db

FIXTURES = Path(os.environ.get("DERMBENCH_FIXTURE_DIR", Path(__file__).resolve().parents[1] / "fixtures"))


def test_class_codes():
    assert db.CLASS_CODES == ["MEL", "NV", "BCC", "AKIEC", "BKL", "DF", "VASC", "ATYP_NV"]
    assert int(db.ClassId.ATYP_NV) == 7


def test_ph2_ingest_and_split(tmp_path):
    for i in range(2, 202):
        name = f"IMD{i:03d}"
        (tmp_path / f"{name}.bmp").write_bytes(b"")
    records = db.ingest_ph2(FIXTURES / "ph2" / "PH2_dataset.txt", tmp_path)
    summary = db.summarize(records)
    assert summary.total == 120
    assert summary.count("MEL") == 40
    assert summary.count(db.ClassId.ATYP_NV) == 80

    split = db.stratified_split(records, seed=7)
    again = db.stratified_split(records, seed=7)
    assert [r.split for r in split] == [r.split for r in again]
    report = db.verify_split(split)
    assert sum(report["totals"]) == 120
    assert not report["leakage"]

    path = tmp_path / "manifest.csv"
    db.write_manifest(path, split)
    back = db.read_manifest(path)
    assert [r.image_id for r in back] == [r.image_id for r in split]


def test_resize_matches_block_average():
    g = np.array([[10 * x + 40 * y for x in range(4)] for y in range(4)], dtype=np.uint8)
    out = db.resize_bilinear(g, 2, 2)
    assert out.tolist() == [[25, 45], [105, 125]]
    rgb = np.full((45, 60, 3), 200, dtype=np.uint8)
    assert db.resize_bilinear(rgb, 224, 224).shape == (224, 224, 3)


def test_metrics_on_fixture():
    scores = db.read_scores(FIXTURES / "scores" / "perfect_onehot.csv")
    cm = db.confusion_matrix(scores)
    assert np.array_equal(cm, np.diag(np.diag(cm)))
    micro = db.micro_average(cm)
    assert micro.precision == micro.recall == micro.f1 == 1.0
    assert db.auc_trapezoid(db.micro_roc(scores)) == 1.0
    assert db.macro_roc_auc(scores)["auc"] == 1.0
    curve = db.roc_curve(scores, "MEL")
    assert curve.shape[1] == 3


def test_score_matrix_roundtrip():
    ids = ["a", "b"]
    probs = np.zeros((2, 8))
    probs[0, 0] = 1.0
    probs[1, 1] = 1.0
    m = db.ScoreMatrix(ids, [0, 1], probs)
    text = db.format_scores(m)
    assert text.splitlines()[0] == "image_id,true_label,MEL,NV,BCC,AKIEC,BKL,DF,VASC,ATYP_NV"
    assert np.array_equal(db.parse_scores(text).scores, probs)


def test_validation_errors():
    with pytest.raises(ValueError):
        db.read_scores(FIXTURES / "scores" / "bad_rowsum.csv")
    with pytest.raises(OSError):
        db.read_scores(FIXTURES / "scores" / "absent.csv")


def test_point_auc_and_dominance():
    assert db.point_auc(0.7652, 0.88) == pytest.approx(0.8226)
    diagonal = np.array([[0.0, 0.0, 1.0], [1.0, 1.0, 0.0]])
    verdict, tpr = db.dominance_check(diagonal, 0.9, 0.9)
    assert verdict == "operator_dominates"
    assert tpr == pytest.approx(0.1)


def test_evaluate_and_compare(tmp_path):
    metrics = json.loads(db.evaluate(FIXTURES / "scores" / "perfect_onehot.csv", tmp_path))
    assert metrics["model"] == "perfect_onehot"
    assert (tmp_path / "table1.csv").exists()
    table3 = db.compare(
        [FIXTURES / "scores" / "model_a.csv"], FIXTURES / "operators_table3.csv", ["MEL", "BCC"], tmp_path
    )
    assert table3.splitlines()[1] == "Dermatologist,82.26,88.82"
