"""
Directional loudness maps of amplitude-panned sources
=====================================================

Place white noise at a few positions in the stereo field and look at where
the loudness lands on the panning-direction axis.
"""

import numpy as np
import matplotlib.pyplot as plt

from dirloud import analyze, synth
from dirloud.panning import closed_form_index

###############################################################################
# Gains and the panning index they imply. Only the gain *ratio* matters.

gain_pairs = [(1, 0), (2, 1), (1, 1), (1, 3)]
for gl, gr in gain_pairs:
    print(f"gains {gl}:{gr} -> panning index {closed_form_index(gl, gr):+.3f}")

###############################################################################
# One map per source. Rows are STFT frames (~10.7 ms apart), columns are the
# 22 panning directions from -1 (left) to +1 (right).

fig, axes = plt.subplots(1, len(gain_pairs), figsize=(14, 3.5), sharey=True)
for ax, (gl, gr) in zip(axes, gain_pairs):
    law = synth.PanLaw.constant_power(gl, gr)
    dmap = analyze(synth.panned_noise(law, duration=2.0, seed=0))
    peak = dmap.directions[np.argmax(dmap.values.mean(axis=0))]
    print(f"{gl}:{gr}  loudest direction {peak:+.3f}")
    ax.imshow(dmap.values.T, origin="lower", aspect="auto", cmap="gray",
              extent=[0, dmap.frame_times()[-1], -1, 1])
    ax.set_title(f"gains {gl}:{gr}")
    ax.set_xlabel("time (s)")
axes[0].set_ylabel("panning direction")
plt.tight_layout()
plt.show()
