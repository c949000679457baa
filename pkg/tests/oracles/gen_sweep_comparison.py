"""Compare the exact residual energy of a linear ramp against the
perturbative scaling law across the acceptance sweep, under the two possible
readings of the ground-state-shift normalizer:

* E_gs(pert)  = (L/2pi) * alpha^2 / (2 v_f r0^2)
* E_gs(exact) = sudden - adiabatic closed forms

Run:  python tests/oracles/gen_sweep_comparison.py
The numbers recorded in notes and the acceptance test tolerance analysis
come from this script.
"""

import numpy as np

from gen_reference_dynamics import residual_continuum


def scaling_law(e_gs, tau_q, tau_0):
    x = (tau_q / tau_0) ** 2
    return e_gs * np.log1p(x) / x


def sweep(alpha, v_f=1.0, r0=1.0, length_l=100.0, n_pts=20):
    tau_0 = r0 / (2.0 * v_f)
    pref = length_l / (2.0 * np.pi)
    e_gs_pert = pref * alpha ** 2 / (2.0 * v_f * r0 ** 2)
    e_gs_exact = pref * ((v_f + alpha) - np.sqrt(v_f * (v_f + 2.0 * alpha))) / r0 ** 2
    print("# alpha=%g  E_gs(pert)=%.10g  E_gs(exact)=%.10g" % (alpha, e_gs_pert, e_gs_exact))
    print("# tau_q/tau_0   exact_dq        dev_vs_pert   dev_vs_exactnorm  ratio_exactnorm")
    worst_p = worst_e = 0.0
    min_ratio = np.inf
    for ratio in np.logspace(-1, 2, n_pts):
        tau_q = ratio * tau_0
        dq = residual_continuum(alpha, tau_q, v_f, r0, length_l)
        pred_p = scaling_law(e_gs_pert, tau_q, tau_0)
        pred_e = scaling_law(e_gs_exact, tau_q, tau_0)
        dev_p = abs(dq / pred_p - 1.0)
        dev_e = abs(dq / pred_e - 1.0)
        worst_p = max(worst_p, dev_p)
        worst_e = max(worst_e, dev_e)
        min_ratio = min(min_ratio, dq / pred_e)
        print("  %9.4f   %.8e   %8.4f%%     %8.4f%%      %.4f" %
              (ratio, dq, 100 * dev_p, 100 * dev_e, dq / pred_e))
    print("# worst dev vs alpha^2 normalizer: %.4f%%" % (100 * worst_p))
    print("# worst dev vs exact normalizer:   %.4f%%" % (100 * worst_e))
    print("# min ratio (exact normalizer):    %.4f" % min_ratio)
    print()


if __name__ == "__main__":
    sweep(0.05)
    sweep(1.0)
