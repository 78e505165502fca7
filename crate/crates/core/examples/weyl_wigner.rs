//! Discrete Wigner function of a qudit from the Weyl frame, compared with the
//! direct Gross formula.
//!
//! cargo run --example weyl_wigner -- 5 42

use fourier_frames::numerics::{ComplexMatrix, Tolerance};
use fourier_frames::projective::weyl_frame;
use fourier_frames::quasiprob::{build_representation, gross_point_to_dual, gross_wigner_pure};
use fourier_frames::states;

fn main() {
    let mut args = std::env::args().skip(1);
    let d: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(3);
    let seed: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(42);
    let tol = Tolerance::default();

    let rep = build_representation(&weyl_frame(d).expect("odd d")).unwrap();
    let psi = states::random_pure_vector(d, seed).unwrap();
    let mu = rep.represent(&ComplexMatrix::outer(&psi), tol).unwrap();
    let gross = gross_wigner_pure(&psi, d, tol).unwrap();

    println!("Wigner function of random_pure({d}, {seed}), rows q, columns p:");
    let mut max_dev: f64 = 0.0;
    for q in 0..d {
        let row: Vec<String> = (0..d)
            .map(|p| {
                let k = rep.group().dual_position(&gross_point_to_dual(q, p, d)).unwrap();
                max_dev = max_dev.max((mu.values[k] - gross[q][p]).abs());
                format!("{:+.4}", mu.values[k])
            })
            .collect();
        println!("  {}", row.join(" "));
    }
    let negativity: f64 = mu.values.iter().filter(|v| **v < 0.0).map(|v| -v).sum();
    println!("sum {:.6}, negativity {negativity:.4}", mu.total());
    println!("max deviation from the Gross formula {max_dev:.2e}");
}
