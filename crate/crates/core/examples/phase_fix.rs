//! Brings bare displacement operators `X^j Z^l` to the inverse convention
//! `P_g^{-1} = P_{g^{-1}}` and builds a representation from the result.

use fourier_frames::bochner::certify_state;
use fourier_frames::numerics::Tolerance;
use fourier_frames::projective::{bare_displacements, phase_fix, phase_multipliers};
use fourier_frames::quasiprob::build_representation;
use fourier_frames::states;

fn main() {
    let tol = Tolerance::default();
    for d in [3usize, 4] {
        let raw = bare_displacements(d).unwrap();
        let mu = phase_multipliers(&raw, tol).unwrap();
        println!("d = {d}: corrected phases");
        for (g, m) in raw.group.elements().zip(&mu) {
            if (m - 1.0).norm() > 1e-12 {
                println!("  {g}: {:+.4}{:+.4}i", m.re, m.im);
            }
        }
        let frame = phase_fix(&raw, tol).unwrap();
        let rep = build_representation(&frame).unwrap();
        let cert = certify_state(&rep, &states::random_density(d, 0).unwrap(), tol).unwrap();
        println!("  faithful: {}, random_density({d}, 0): {}", frame.is_faithful(), cert.verdict().label());
    }
}
