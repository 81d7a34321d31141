# Copyright 2026 The picobench Authors. All Rights Reserved.
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
"""Smoke tests for the Python bindings."""

import cmath
import json
import math
import random
import shutil
import struct
from pathlib import Path

import pytest

import picobench as pb

ROOT = Path(__file__).resolve().parents[2]
FIXTURES = ROOT / "tests" / "fixtures"
DATA = ROOT / "data"


def test_cpu_and_memory_formulas():
    a = pb.parse_cpu_stat("cpu  100 0 0 800 0 0 0 0\n")
    b = pb.parse_cpu_stat("cpu  150 0 0 850 0 0 0 0\n")
    assert pb.cpu_utilization(a, b) == 50.0
    assert pb.try_cpu_utilization(a, a) is None
    with pytest.raises(pb.PicobenchError) as info:
        pb.cpu_utilization(a, a)
    assert info.value.code == "NoDelta"
    assert pb.memory_utilization(100000, 89000) == pytest.approx(11.0, abs=1e-12)


def test_fft_against_python_dft():
    rng = random.Random(1)
    x = [complex(rng.gauss(0, 1), rng.gauss(0, 1)) for _ in range(64)]
    ref = [sum(x[t] * cmath.exp(-2j * math.pi * k * t / 64) for t in range(64))
           for k in range(64)]
    got = pb.fft(x)
    assert max(abs(g - r) for g, r in zip(got, ref)) <= 1e-9 * max(abs(r) for r in ref)
    back = pb.ifft(got)
    assert max(abs(u - v) for u, v in zip(back, x)) < 1e-12
    with pytest.raises(pb.PicobenchError):
        pb.fft([0j] * 12)


def test_stft_and_wav():
    samples = [0.0, 16384, -32768]
    header = struct.pack("<4sI4s4sIHHIIHH4sI", b"RIFF", 36 + 6, b"WAVE", b"fmt ", 16, 1, 1,
                         16000, 32000, 2, 16, b"data", 6)
    rate, decoded = pb.decode_wav(header + struct.pack("<3h", *[int(s) for s in samples]))
    assert rate == 16000
    assert decoded == [0.0, 0.5, -1.0]
    frames = pb.stft_log_power([0.0] * 2048)
    assert len(frames) == 7 and len(frames[0]) == 257
    assert all(v == -10.0 for row in frames for v in row)


def test_image_ops_and_quantize():
    img = pb.ImageTensor(2, 2, 1, [0, 2, 4, 6])
    assert pb.resize_bilinear(img, 1, 1).data == [3.0]
    assert pb.normalize(pb.ImageTensor(1, 1, 1, [255]), [127.5], [127.5]).data == [1.0]
    assert pb.quantize([0.0, 0.5, 10.0], 1 / 128, 128) == [128, 192, 255]


def test_summarize():
    s = pb.summarize([float(i) for i in range(1, 101)])
    assert s.count == 100 and s.mean == 50.5 and s.p50 == 50.5
    assert s.p99 == pytest.approx(99.01, abs=1e-12)


def test_compare_platform_fixtures():
    a = pb.read_result(FIXTURES / "results" / "mobilenet_bbai64.json")
    b = pb.read_result(FIXTURES / "results" / "mobilenet_rpi4.json")
    rep = pb.compare(a, b)
    assert rep.entry("latency_ms").ratio == pytest.approx(4.14, abs=0.01)
    assert rep.entry("cpu_pct").delta == pytest.approx(23.21, abs=0.01)
    assert "latency_ms" in rep.to_table()
    assert json.loads(rep.to_json())["schema_version"] == 1


def test_run_report_round_trip(tmp_path):
    r = pb.run_benchmark(DATA / "synthetic" / "benchmark.toml", iterations=10, warmup=0)
    assert len(r.records) == 10
    assert r.summaries["latency_ms"].count == 10
    pb.write_result(r, tmp_path / "r.json")
    assert pb.read_result(tmp_path / "r.json") == r
    assert r.to_csv().count("\n") == 11
    st = pb.stability(r)
    assert st.distinct_labels >= 1
    svg = pb.render_chart(r, "latency_histogram")
    assert svg.startswith("<?xml")
    assert set(pb.CHART_KINDS) == {"latency_histogram", "metric_trend", "confidence_trend",
                                   "prediction_bar"}


def test_validate_and_cli(tmp_path):
    status = pb.validate_manifest(DATA / "keyword" / "manifest.json")
    assert status and all(v is None for v in status.values())
    result = tmp_path / "g.json"
    shutil.copy(FIXTURES / "results" / "gesture_bbai64.json", result)
    code, out, err = pb.cli_main(["compare", str(result), str(result)])
    assert code == 0, err
    assert "1.00" in out
    assert (tmp_path / "g_vs_g.compare.json").exists()
    code, _, err = pb.cli_main(["report", str(tmp_path / "missing.json")])
    assert code == 3 and err.startswith("PICO-E003")
