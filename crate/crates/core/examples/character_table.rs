//! Character table of a finite abelian group and the classical positivity
//! test for characteristic functions.
//!
//! cargo run --example character_table -- 2 4

use fourier_frames::group::{classical_bochner_check, fourier_inverse, make_group, GroupFunction};
use fourier_frames::numerics::Tolerance;

fn main() {
    let orders: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let orders = if orders.is_empty() { vec![2, 3] } else { orders };
    let group = make_group(&orders).expect("valid orders");
    let table = group.character_table();

    println!("|G| = {}", group.size());
    for (r, j) in group.dual_indices().enumerate() {
        let row: Vec<String> = (0..group.size())
            .map(|c| {
                let z = table[(r, c)];
                format!("{:+.3}{:+.3}i", z.re, z.im)
            })
            .collect();
        println!("chi{j}: {}", row.join(" "));
    }

    // a probability vector passes, a vector with a negative entry does not
    let n = group.size();
    let mut p = vec![1.0 / n as f64; n];
    for (name, values) in [
        ("uniform", p.clone()),
        ("skewed", {
            p[0] += 0.5;
            p[n - 1] -= 0.5;
            p
        }),
    ] {
        let mu = GroupFunction::from_real(group.clone(), &values).unwrap();
        let phi = fourier_inverse(&mu).unwrap();
        let check = classical_bochner_check(&phi, Tolerance::default()).unwrap();
        println!(
            "{name}: phi(e) = {:.3}, translate matrix min eigenvalue {:+.4}, probability: {}",
            phi.values[0].re, check.min_eigenvalue, check.verdict
        );
    }
}
