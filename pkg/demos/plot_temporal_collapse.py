"""
Temporal collapse of a left-panned source
=========================================

A hard-left source whose image collapses to the center between 2.0-2.5 s and
3.0-3.5 s. The DIFF map lights up only inside those intervals, at the left
and center directions.
"""

import numpy as np
import matplotlib.pyplot as plt

from dirloud import analyze, dld, map_difference, synth
from dirloud.export import write_pgm

ref = synth.panned_noise(synth.PanLaw(1, 0), duration=5.0, seed=2)
sut = synth.pan_collapse(ref, 1.0, [(2.0, 2.5), (3.0, 3.5)])

map_ref = analyze(ref)
map_sut = analyze(sut)
diff = map_difference(map_ref, map_sut)
report = dld(map_ref, map_sut)
print(f"DLD = {report.dld:.4f} over {report.frames} frames")

###############################################################################
# Per-frame distortion: zero except where the image collapsed.

times = map_ref.frame_times()
active = times[report.per_frame > 0]
print(f"non-zero frames span {active.min():.2f}-{active.max():.2f} s")

###############################################################################
# The three maps side by side; brighter means louder.

fig, axes = plt.subplots(1, 3, figsize=(14, 3.5), sharey=True)
for ax, m, title in zip(axes, (map_ref, map_sut, diff), ("REF", "SUT", "DIFF")):
    ax.imshow(m.values.T, origin="lower", aspect="auto", cmap="gray",
              extent=[0, times[-1], -1, 1])
    ax.set_title(title)
    ax.set_xlabel("time (s)")
axes[0].set_ylabel("panning direction")
plt.tight_layout()
plt.show()

# same images as dependency-free graymaps
for m, name in ((map_ref, "ref"), (map_sut, "sut"), (diff, "diff")):
    write_pgm(f"collapse_{name}.pgm", m)
