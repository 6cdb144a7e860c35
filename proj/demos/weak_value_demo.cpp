// Weak values of position-window projectors across the interference region:
// the real part traces the fringes even though every run post-selects the
// same outgoing packet.

#include <cstdio>

#include "modqm/tsvf.hpp"

using namespace modqm;

int main() {
    Grid g = make_grid(2048, -40.0, 40.0, 1.0);
    ExperimentSpec spec;
    spec.envelope = Envelope{EnvelopeKind::gaussian, 2.0};
    spec.L = 20.0;
    spec.p0 = 2.5;
    spec.phi = 1.0;
    Experiment ex = build_experiment(g, spec);
    TwoStateVector tsv = make_tsv(ex.pre_T, ex.post_T);

    std::printf("window_center,re_weak_value,im_weak_value\n");
    for (double c = -4.0; c <= 4.0; c += 0.25) {
        const cplx w = window_amplitude(tsv, PositionWindow{c - 0.125, c + 0.125}) / tsv.overlap;
        std::printf("%.6f,%.17e,%.17e\n", c, w.real(), w.imag());
    }
    return 0;
}
