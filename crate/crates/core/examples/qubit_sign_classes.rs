//! The eight signed qubit frames fall into two classes of quasi-probability
//! representations, labelled by the product of the signs.

use fourier_frames::numerics::Tolerance;
use fourier_frames::projective::{qubit_frame, qubit_parity, triple_product_invariant, Sign};
use fourier_frames::quasiprob::build_representation;
use fourier_frames::states;

fn main() {
    let signs = [Sign::Plus, Sign::Minus];
    let rho = states::random_density(2, 3).unwrap();
    println!("signs(X,Z,Y)  parity  Tr(P10 P01 P11)  distribution of random_density(2, 3)");
    for &x in &signs {
        for &z in &signs {
            for &y in &signs {
                let s = [x, z, y];
                let frame = qubit_frame(s).unwrap();
                let t = triple_product_invariant(&frame).unwrap();
                let mu = build_representation(&frame).unwrap().represent(&rho, Tolerance::default()).unwrap();
                let mu: Vec<String> = mu.values.iter().map(|v| format!("{v:+.3}")).collect();
                println!(
                    "{x}{z}{y}           {:+}      {:+.0}{:+.0}i          {}",
                    qubit_parity(s),
                    t.re,
                    t.im,
                    mu.join(" ")
                );
            }
        }
    }
}
