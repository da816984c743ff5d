"""
Batch scoring from a manifest
=============================

Write a handful of REF/SUT WAV pairs, list them in a CSV manifest with a
score column, and run ``dirloud batch`` on it. The report has one row per
item plus a Pearson R block for every numeric score column.
"""

import csv
import tempfile
from pathlib import Path

from dirloud import synth
from dirloud.cli import main
from dirloud.signal_io import write_stereo_wav

work = Path(tempfile.mkdtemp(prefix="dirloud_"))
ref = synth.panned_noise(synth.PanLaw(1, 0.2), duration=2.0, seed=1)
write_stereo_wav(work / "ref.wav", ref, "pcm24")

items = []
for k, alpha in enumerate([0.0, 0.2, 0.4, 0.7, 1.0]):
    name = f"sut_{k}.wav"
    write_stereo_wav(work / name, synth.pan_collapse(ref, alpha), "pcm24")
    items.append((f"item{k}", "ref.wav", name, 100 - 80 * alpha))

with open(work / "manifest.csv", "w", newline="") as f:
    writer = csv.writer(f)
    writer.writerow(["item_id", "ref_path", "sut_path", "mushra"])
    writer.writerows(items)

main(["batch", str(work / "manifest.csv"), "--jobs", "2", "-o", str(work / "report.csv")])
print((work / "report.csv").read_text())
