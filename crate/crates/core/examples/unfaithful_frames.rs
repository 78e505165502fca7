//! Unfaithful frames: the doubled phase space of a qubit and the redundant
//! Z_2^3 frame. Some Fourier components vanish, yet the rest still span and
//! both certificates keep working.

use fourier_frames::bochner::certify_state;
use fourier_frames::numerics::Tolerance;
use fourier_frames::projective::{leonhardt_frame, z2cubed_frame};
use fourier_frames::quasiprob::build_representation;
use fourier_frames::states;

fn main() {
    let tol = Tolerance::default();
    for (name, frame) in [("leonhardt(2)", leonhardt_frame(2).unwrap()), ("z2cubed", z2cubed_frame().unwrap())] {
        let kernel: Vec<String> = frame.kernel().iter().map(|g| g.to_string()).collect();
        let rep = build_representation(&frame).unwrap();
        let zero: Vec<String> = rep
            .fourier_ops()
            .iter()
            .enumerate()
            .filter(|(_, f)| f.frobenius_norm() < 1e-12)
            .map(|(k, _)| rep.group().dual_index(k).to_string())
            .collect();
        let (a, b) = rep.frame_bounds();
        println!("{name}: |G| = {}, kernel {}", frame.group().size(), kernel.join(" "));
        println!("  zero Fourier components: {}", if zero.is_empty() { "none".into() } else { zero.join(" ") });
        println!("  frame bounds [{a:.3}, {b:.3}]");

        for seed in 0..4 {
            let rho = states::random_hermitian_trace1(2, seed).unwrap();
            let cert = certify_state(&rep, &rho, tol).unwrap();
            println!(
                "  random_hermitian({seed}): M^Q min {:+.4} (rho min {:+.4}), M^C min {:+.4} (mu min {:+.4})",
                cert.mq.min_eigenvalue, cert.state_min_eig, cert.mc.min_eigenvalue, cert.min_mu
            );
        }
    }
}
