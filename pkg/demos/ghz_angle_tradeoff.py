"""Walkthrough: tuning a three-emitter chain toward GHZ photon emission.

Three emitters in a chain emit a photon triple as the triply excited
state cascades down.  With all dipoles parallel the cascade is efficient
(most population follows the two dominant frequency sequences) but the
branches are nearly indistinguishable, so the three-photon state has low
GHZ fidelity.  Rotating the middle emitter's dipole by an angle theta
suppresses the cross-branch decay channels: fidelity rises while
efficiency falls.  This script sweeps theta to show that tradeoff.

Run:  python demos/ghz_angle_tradeoff.py        (takes a few minutes)
"""

import numpy as np

from cascadesim.experiments import evaluate_model, ghz_model


def main():
    print("theta/pi   eta     F(opt)  dE_min(meV)  paths")
    for frac in (0.0, 0.25, 0.30, 0.35, 0.40, 0.45, 0.50):
        result = evaluate_model(ghz_model(theta=frac * np.pi),
                                n_codewords=2, n_photons=3)
        r = result.report
        print(f"  {frac:.2f}    {r.eta:.3f}   {r.fidelity_phase_opt:.3f}"
              f"   {r.delta_e_min * 1e3:8.2f}    {result.merged_path_count}")
    # Reading the table: at theta = 0 roughly 5 of 6 photon triples land
    # in the two codeword sequences (high eta) but nothing distinguishes
    # the branches dynamically, so the coherent superposition is poor
    # (F ~ 0.54).  Near theta = 0.35 pi the product of the two scores
    # peaks: F ~ 0.86 at eta ~ 0.67 with ~10 meV bin separation.  Beyond
    # that, fidelity keeps climbing toward ~0.99 but most of the
    # population leaks into non-codeword paths.


if __name__ == "__main__":
    main()
