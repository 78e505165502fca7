//! Certificates for a handful of qutrit operators: a stabilizer state, a
//! random pure state, mixed states and a non-positive operator.

use fourier_frames::bochner::certify_state;
use fourier_frames::numerics::Tolerance;
use fourier_frames::projective::weyl_frame;
use fourier_frames::quasiprob::build_representation;
use fourier_frames::states::StateSpec;

fn main() {
    let rep = build_representation(&weyl_frame(3).unwrap()).unwrap();
    for spec in ["quadratic:1,2", "random-pure:42", "random-density:7", "mixed", "diag:1.2,0.1,-0.3"] {
        let rho = spec.parse::<StateSpec>().unwrap().build(3).unwrap();
        let cert = certify_state(&rep, &rho, Tolerance::default()).unwrap();
        println!("{spec:>18}: {} (exit {})", cert.verdict().label(), cert.verdict().exit_code());
        println!(
            "{:>18}  M^Q min {:+.4e}, M^C min {:+.4e}, oracles agree: {}",
            "",
            cert.mq.min_eigenvalue,
            cert.mc.min_eigenvalue,
            cert.oracle_agreement.quantum && cert.oracle_agreement.positive
        );
    }
}
