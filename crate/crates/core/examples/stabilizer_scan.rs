//! Scans stabilizer states and Haar-random pure states of a qudit in
//! parallel and counts the positively represented ones.
//!
//! cargo run --release --example stabilizer_scan -- 5 200

use fourier_frames::bochner::scan;
use fourier_frames::numerics::Tolerance;
use fourier_frames::projective::weyl_frame;
use fourier_frames::quasiprob::build_representation;
use fourier_frames::states;

fn main() {
    let mut args = std::env::args().skip(1);
    let d: usize = args.next().and_then(|a| a.parse().ok()).unwrap_or(3);
    let count: u64 = args.next().and_then(|a| a.parse().ok()).unwrap_or(200);
    let rep = build_representation(&weyl_frame(d).expect("odd prime d")).unwrap();
    let tol = Tolerance::default();

    let stab = states::stabilizer_states(d).expect("odd prime d");
    let report = scan(&rep, &stab, tol);
    println!("stabilizer states: {} valid / {} positive", report.valid, report.positive);

    let random: Vec<_> = (0..count).map(|s| states::random_pure(d, s).unwrap()).collect();
    let report = scan(&rep, &random, tol);
    let worst =
        report.rows.iter().filter_map(|r| r.result.as_ref().ok()).map(|c| c.min_mu).fold(f64::INFINITY, f64::min);
    println!(
        "random pure states: {} valid / {} positive, most negative value {worst:.4}",
        report.valid, report.positive
    );
}
