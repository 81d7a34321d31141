#!/usr/bin/env python3
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
"""Regenerates the bundled sample datasets under data/.

data/synthetic: 6 grayscale 16x16 images and 4 raw 16-element tensors, all of
which prepare to 16 values so they fit one synthetic backend.
data/keyword: 4 one-second 16 kHz tone clips for the audio path.
"""

import json
import pathlib
import struct
import sys

import numpy as np

DTYPE_CODES = {np.dtype(np.float32): 0, np.dtype(np.uint8): 1, np.dtype(np.int16): 2}


def write_pten(path, array):
    array = np.ascontiguousarray(array)
    header = b"PTEN" + struct.pack("<HBB", 1, DTYPE_CODES[array.dtype], array.ndim)
    header += struct.pack("<%dI" % array.ndim, *array.shape)
    path.write_bytes(header + array.astype(array.dtype.newbyteorder("<")).tobytes())


def write_wav(path, samples, rate):
    pcm = np.clip(np.round(samples * 32768.0), -32768, 32767).astype("<i2").tobytes()
    fmt = struct.pack("<HHIIHH", 1, 1, rate, rate * 2, 2, 16)
    body = b"WAVE" + b"fmt " + struct.pack("<I", len(fmt)) + fmt
    body += b"data" + struct.pack("<I", len(pcm)) + pcm
    path.write_bytes(b"RIFF" + struct.pack("<I", len(body)) + body)


def make_synthetic(root):
    root.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(20260101)
    samples = []
    for i in range(6):
        yy, xx = np.mgrid[0:16, 0:16]
        img = (127 + 120 * np.sin((xx + 2 * i) / 3.0) * np.cos(yy / 4.0)).astype(np.uint8)
        name = "img_%02d.pten" % i
        write_pten(root / name, img.reshape(16, 16, 1))
        samples.append({"id": "img_%02d" % i, "type": "image", "path": name})
    for i in range(4):
        t = rng.uniform(-1.0, 1.0, size=16).astype(np.float32)
        name = "vec_%02d.pten" % i
        write_pten(root / name, t)
        # Raw tensors skip the image normalization below.
        samples.append({"id": "vec_%02d" % i, "type": "tensor", "path": name})
    manifest = {"name": "synthetic-10", "samples": samples}
    (root / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def make_keyword(root):
    root.mkdir(parents=True, exist_ok=True)
    rate = 16000
    t = np.arange(rate) / rate
    samples = []
    for i, freq in enumerate([250.0, 500.0, 1000.0, 2000.0]):
        clip = 0.5 * np.sin(2 * np.pi * freq * t)
        name = "tone_%04d.wav" % int(freq)
        write_wav(root / name, clip, rate)
        samples.append({"id": "tone_%d" % int(freq), "type": "audio", "path": name})
    manifest = {"name": "keyword-tones", "samples": samples}
    (root / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def main(argv):
    data = pathlib.Path(argv[1]) if len(argv) > 1 else pathlib.Path(__file__).parent.parent / "data"
    make_synthetic(data / "synthetic")
    make_keyword(data / "keyword")


if __name__ == "__main__":
    main(sys.argv)
