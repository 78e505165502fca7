//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::time::{Duration, Instant};

use fourier_frames::bochner::{build_mq, certify_state, Verdict};
use fourier_frames::group::{
    classical_bochner_check, fourier_forward, fourier_inverse, make_group, root_of_unity, FiniteAbelianGroup,
    GroupFunction,
};
use fourier_frames::numerics::{herm_eigenvalues, ComplexMatrix, Tolerance};
use fourier_frames::projective::{
    cocycle_table, gen_pauli, leonhardt_frame, qubit_frame, qubit_parity, tensor_frame, triple_product_invariant,
    weyl_frame, z2cubed_frame, Pauli, ProjectiveFrame, Sign,
};
use fourier_frames::quasiprob::{build_representation, gross_point_to_dual, gross_wigner_pure, QuasiProbDistribution};
use fourier_frames::states;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Oracle values closer to zero than this are not counted as disagreements.
const BOUNDARY_BAND: f64 = 1e-8;
const OPERATORS_PER_FRAME: u64 = 200;
/// Tolerance for re-testing operators that land inside the band.
const TIGHT_TOL: f64 = 1e-12;
const RUNTIME_BUDGET: Duration = Duration::from_secs(60);
const WIGNER_ENTRY_TOL: f64 = 1e-10;
const GROSS_TOL: f64 = 1e-10;
const GROSS_STATES: u64 = 50;
const MIN_NEGATIVE_OF_100: usize = 95;
/// Exit-4 count among `random_pure(3, 42..142)`, frozen from the first verified run.
const NEGATIVE_COUNT_SEED_42: usize = 100;
const STRUCTURE_TOL: f64 = 1e-10;
const ZERO_COMPONENT_NORM: f64 = 1e-12;
const ROUND_TRIP_TOL: f64 = 1e-10;
const COCYCLE_TOL: f64 = 1e-10;
const HADAMARD_TOL: f64 = 1e-10;
const FOURIER_ROUND_TRIP_TOL: f64 = 1e-12;
const MAX_GROUP_ORDER: usize = 64;

struct Outcome {
    pass: bool,
    detail: String,
}

fn tol() -> Tolerance {
    Tolerance::default()
}

fn all_signs() -> Vec<[Sign; 3]> {
    let s = [Sign::Plus, Sign::Minus];
    let mut out = Vec::new();
    for &x in &s {
        for &z in &s {
            for &y in &s {
                out.push([x, z, y]);
            }
        }
    }
    out
}

fn suite_frames() -> Vec<(&'static str, ProjectiveFrame)> {
    let q = qubit_frame([Sign::Plus; 3]).unwrap();
    vec![
        ("weyl3", weyl_frame(3).unwrap()),
        ("weyl5", weyl_frame(5).unwrap()),
        ("qubit+++", q.clone()),
        ("qubit++-", qubit_frame([Sign::Plus, Sign::Plus, Sign::Minus]).unwrap()),
        ("qubit(x)qubit", tensor_frame(&q, &q).unwrap()),
        ("leonhardt2", leonhardt_frame(2).unwrap()),
        ("z2cubed", z2cubed_frame().unwrap()),
    ]
}

fn builtin_frames() -> Vec<(String, ProjectiveFrame)> {
    let mut out: Vec<(String, ProjectiveFrame)> = vec![
        ("weyl3".into(), weyl_frame(3).unwrap()),
        ("weyl5".into(), weyl_frame(5).unwrap()),
        ("weyl7".into(), weyl_frame(7).unwrap()),
    ];
    for s in all_signs() {
        out.push((format!("qubit{}{}{}", s[0], s[1], s[2]), qubit_frame(s).unwrap()));
    }
    let q = qubit_frame([Sign::Plus; 3]).unwrap();
    out.push(("qubit(x)qubit".into(), tensor_frame(&q, &q).unwrap()));
    out.push(("leonhardt2".into(), leonhardt_frame(2).unwrap()));
    out.push(("leonhardt3".into(), leonhardt_frame(3).unwrap()));
    out.push(("z2cubed".into(), z2cubed_frame().unwrap()));
    out
}

/// Seeded Hermitian trace-one operators: a rotation of density matrices,
/// generic Hermitian operators, pure states and mixtures placed just either
/// side of the positivity boundary.
fn test_operator(d: usize, seed: u64) -> ComplexMatrix {
    match seed % 4 {
        0 => states::random_density(d, seed).unwrap(),
        1 => states::random_hermitian_trace1(d, seed).unwrap(),
        2 => states::random_pure(d, seed).unwrap(),
        _ => {
            let sigma = states::random_hermitian_trace1(d, seed).unwrap();
            let lmin = herm_eigenvalues(&sigma, tol()).unwrap()[0];
            let mixed = states::maximally_mixed(d).unwrap();
            if lmin >= 0.0 {
                return sigma;
            }
            // (1 - t) I/d + t sigma has smallest eigenvalue zero at t*
            let inv_d = 1.0 / d as f64;
            let t_star = inv_d / (inv_d - lmin);
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            let t = t_star * (1.0 + rng.random_range(-1e-3..1e-3));
            &mixed.scale_real(1.0 - t) + &sigma.scale_real(t)
        }
    }
}

fn listing(cases: &[String], suffix: &str) -> String {
    let hits: Vec<&str> = cases.iter().filter(|w| w.ends_with(suffix)).map(String::as_str).collect();
    if hits.is_empty() {
        String::new()
    } else {
        format!(": {}", hits.join(" "))
    }
}

fn criteria_1_and_2() -> (Outcome, Outcome) {
    let start = Instant::now();
    let (mut dq, mut dc, mut in_band_q, mut in_band_c, mut total) = (0, 0, 0, 0, 0);
    let (mut retest_q, mut retest_c) = (0, 0);
    let tight = Tolerance::new(TIGHT_TOL, TIGHT_TOL).unwrap();
    let mut worst = Vec::new();
    for (name, frame) in suite_frames() {
        let rep = build_representation(&frame).unwrap();
        let d = rep.dim();
        for seed in 0..OPERATORS_PER_FRAME {
            let rho = test_operator(d, seed);
            let cert = certify_state(&rep, &rho, tol()).unwrap();
            total += 1;
            let lmin = herm_eigenvalues(&rho, tol()).unwrap()[0];
            if lmin.abs() <= BOUNDARY_BAND {
                in_band_q += 1;
                let cert = certify_state(&rep, &rho, tight).unwrap();
                retest_q += (cert.mq.is_psd != (lmin >= -TIGHT_TOL)) as usize;
            } else if cert.mq.is_psd != (lmin >= 0.0) {
                dq += 1;
                worst.push(format!("{name}/{seed} M^Q"));
            }
            // independent oracle: mu_j = Tr(rho F_j) evaluated directly
            let min_mu = rep.fourier_ops().iter().map(|f| (&rho * f).trace().re).fold(f64::INFINITY, f64::min);
            if min_mu.abs() <= BOUNDARY_BAND {
                in_band_c += 1;
                let cert = certify_state(&rep, &rho, tight).unwrap();
                retest_c += (cert.mc.is_psd != (min_mu >= -TIGHT_TOL)) as usize;
            } else if cert.mc.is_psd != (min_mu >= 0.0) {
                dc += 1;
                worst.push(format!("{name}/{seed} M^C"));
            }
        }
    }
    let elapsed = start.elapsed();
    let in_time = elapsed < RUNTIME_BUDGET;
    let one = Outcome {
        pass: dq == 0 && in_time,
        detail: format!(
            "{total} operators over 7 frames, {dq} disagreements, {in_band_q} inside the band ({retest_q} differ at {TIGHT_TOL:e}), {elapsed:.1?} elapsed{}",
            listing(&worst, "M^Q")
        ),
    };
    let two = Outcome {
        pass: dc == 0 && in_time,
        detail: format!(
            "{total} operators over 7 frames, {dc} disagreements, {in_band_c} inside the band ({retest_c} differ at {TIGHT_TOL:e}){}",
            listing(&worst, "M^C")
        ),
    };
    (one, two)
}

fn criterion_3() -> Outcome {
    let mut max_dev = 0.0_f64;
    let mut checked = 0;
    for d in [3usize, 5] {
        let frame = weyl_frame(d).unwrap();
        let rep = build_representation(&frame).unwrap();
        let g = frame.group().clone();
        let (x, z) = gen_pauli(d).unwrap();
        let s = (d + 1) / 2;
        for seed in 0..10 {
            let rho = test_operator(d, seed);
            let phi = rep.characteristic(&rho, tol()).unwrap();
            let mq = build_mq(&phi, frame.cocycle(), tol()).unwrap();
            // phi recomputed from X and Z directly
            let direct = |j: usize, l: usize| {
                let p = (&x.pow(j as u64) * &z.pow(l as u64)).scale(root_of_unity((s * j * l) % d, d));
                (&rho * &p).trace()
            };
            for a in 0..g.size() {
                for b in 0..g.size() {
                    let (ga, gb) = (g.element(a).0, g.element(b).0);
                    let (j, l, jp, lp) = (ga[0], ga[1], gb[0], gb[1]);
                    let e = (s * ((j * lp) % d + d - (jp * l) % d)) % d;
                    let expected = direct((jp + d - j) % d, (lp + d - l) % d) * root_of_unity(e, d);
                    max_dev = max_dev.max((mq[(a, b)] - expected).norm());
                    checked += 1;
                }
            }
        }
    }
    Outcome { pass: max_dev < WIGNER_ENTRY_TOL, detail: format!("{checked} entries, max deviation {max_dev:.2e}") }
}

fn criterion_4() -> Outcome {
    let mut max_dev = 0.0_f64;
    for d in [3usize, 5] {
        let rep = build_representation(&weyl_frame(d).unwrap()).unwrap();
        for seed in 0..GROSS_STATES {
            let psi = states::random_pure_vector(d, seed).unwrap();
            let mu = rep.represent(&ComplexMatrix::outer(&psi), tol()).unwrap();
            let w = gross_wigner_pure(&psi, d, tol()).unwrap();
            for q in 0..d {
                for p in 0..d {
                    let k = rep.group().dual_position(&gross_point_to_dual(q, p, d)).unwrap();
                    max_dev = max_dev.max((mu.values[k] - w[q][p]).abs());
                }
            }
        }
    }
    Outcome {
        pass: max_dev < GROSS_TOL,
        detail: format!("{} pure states in d = 3, 5, max deviation {max_dev:.2e}", 2 * GROSS_STATES),
    }
}

fn criterion_5() -> Outcome {
    let mut stab_ok = 0;
    let mut stab_total = 0;
    for d in [3usize, 5] {
        let rep = build_representation(&weyl_frame(d).unwrap()).unwrap();
        for rho in states::stabilizer_states(d).unwrap() {
            stab_total += 1;
            let cert = certify_state(&rep, &rho, tol()).unwrap();
            if cert.verdict() == Verdict::PositivelyRepresentable && cert.verdict().exit_code() == 0 {
                stab_ok += 1;
            }
        }
    }
    let rep = build_representation(&weyl_frame(3).unwrap()).unwrap();
    let negative = (42..142)
        .filter(|&s| {
            let cert = certify_state(&rep, &states::random_pure(3, s).unwrap(), tol()).unwrap();
            cert.verdict().exit_code() == 4
        })
        .count();
    Outcome {
        pass: stab_ok == 42 && stab_total == 42 && negative >= MIN_NEGATIVE_OF_100 && negative == NEGATIVE_COUNT_SEED_42,
        detail: format!(
            "{stab_ok}/{stab_total} stabilizer states exit 0, {negative}/100 random pure states exit 4 (frozen {NEGATIVE_COUNT_SEED_42})"
        ),
    }
}

fn criterion_6() -> Outcome {
    let mut worst_trace = 0.0_f64;
    let mut worst_gram = 0.0_f64;
    let mut worst_fourier = 0.0_f64;
    let mut names = Vec::new();
    for (name, frame) in builtin_frames() {
        if !frame.is_faithful() {
            continue;
        }
        names.push(name);
        let d = frame.dim() as f64;
        let ops = frame.operators();
        let n = ops.len();
        for op in ops.iter().skip(1) {
            worst_trace = worst_trace.max(op.trace().norm());
        }
        for a in 0..n {
            for b in 0..n {
                let ip = (&ops[a].dagger() * &ops[b]).trace();
                let expected = if a == b { d } else { 0.0 };
                worst_gram = worst_gram.max((ip - Complex64::new(expected, 0.0)).norm());
            }
        }
        let rep = build_representation(&frame).unwrap();
        let f = rep.fourier_ops();
        let c = (&f[0] * &f[0]).trace().re;
        for a in 0..n {
            for b in 0..n {
                let ip = (&f[a] * &f[b]).trace();
                let expected = if a == b { c } else { 0.0 };
                worst_fourier = worst_fourier.max((ip - Complex64::new(expected, 0.0)).norm());
            }
        }
        worst_fourier = worst_fourier.max((c - 1.0 / d).abs());
    }
    Outcome {
        pass: worst_trace < STRUCTURE_TOL && worst_gram < STRUCTURE_TOL && worst_fourier < STRUCTURE_TOL,
        detail: format!(
            "{} faithful frames, max |Tr P_g| {worst_trace:.1e}, Gram - dI {worst_gram:.1e}, Fourier Gram - I/d {worst_fourier:.1e}",
            names.len()
        ),
    }
}

fn criterion_7() -> Outcome {
    let rep = build_representation(&z2cubed_frame().unwrap()).unwrap();
    let zeros: Vec<String> = rep
        .fourier_ops()
        .iter()
        .enumerate()
        .filter(|(_, f)| f.frobenius_norm() < ZERO_COMPONENT_NORM)
        .map(|(k, _)| rep.group().dual_index(k).to_string())
        .collect();
    let mut max_err = 0.0_f64;
    for seed in 0..20 {
        let rho = states::random_density(2, seed).unwrap();
        let mu = rep.represent(&rho, tol()).unwrap();
        let back = rep.reconstruct(&QuasiProbDistribution::new(rep.group().clone(), mu.values).unwrap()).unwrap();
        max_err = max_err.max(back.max_abs_diff(&rho));
    }
    Outcome {
        pass: zeros.len() == 1 && max_err < ROUND_TRIP_TOL,
        detail: format!(
            "{} zero components (expected exactly 1) at {}, round-trip error {max_err:.1e} on 20 density matrices",
            zeros.len(),
            zeros.join(" ")
        ),
    }
}

fn criterion_8() -> Outcome {
    let mut modulus = 0.0_f64;
    let mut inverse_pairs = 0.0_f64;
    let mut identity = 0.0_f64;
    let mut triples = 0usize;
    let mut count = 0;
    for (_, frame) in builtin_frames() {
        count += 1;
        let alpha = cocycle_table(&frame, tol()).unwrap();
        let g = frame.group();
        let n = g.size();
        for a in 0..n {
            let inv = g.inverse_idx(a);
            inverse_pairs = inverse_pairs.max((alpha.get(a, inv) - 1.0).norm()).max((alpha.get(inv, a) - 1.0).norm());
            for b in 0..n {
                modulus = modulus.max((alpha.get(a, b).norm() - 1.0).abs());
            }
        }
        if n <= 16 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let lhs = alpha.get(a, b) * alpha.get(g.compose_idx(a, b), c);
                        let rhs = alpha.get(b, c) * alpha.get(a, g.compose_idx(b, c));
                        identity = identity.max((lhs - rhs).norm());
                        triples += 1;
                    }
                }
            }
        }
    }
    Outcome {
        pass: modulus < COCYCLE_TOL && inverse_pairs < COCYCLE_TOL && identity < COCYCLE_TOL,
        detail: format!(
            "{count} frames, ||alpha| - 1| {modulus:.1e}, alpha(g,g^-1) - 1 {inverse_pairs:.1e}, identity {identity:.1e} over {triples} triples"
        ),
    }
}

/// Non-increasing factor lists with product at most `max`.
fn factor_lists(max: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, largest: usize, remaining: usize, out: &mut Vec<Vec<usize>>) {
        for f in (2..=largest.min(remaining)).rev() {
            prefix.push(f);
            out.push(prefix.clone());
            go(prefix, f, remaining / f, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), max, max, &mut out);
    out
}

fn random_probability(rng: &mut ChaCha20Rng, n: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..n).map(|_| -rng.random::<f64>().max(1e-300).ln()).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

fn criterion_9() -> Outcome {
    let mut groups: Vec<FiniteAbelianGroup> = vec![FiniteAbelianGroup::trivial()];
    groups.extend(factor_lists(MAX_GROUP_ORDER).into_iter().map(|f| make_group(&f).unwrap()));
    let mut rng = ChaCha20Rng::seed_from_u64(9);
    let mut worst_unitary = 0.0_f64;
    let mut worst_round_trip = 0.0_f64;
    for g in &groups {
        let n = g.size();
        let t = g.character_table();
        let gram = (&t * &t.dagger()).scale_real(1.0 / n as f64);
        worst_unitary = worst_unitary.max(gram.max_abs_diff(&ComplexMatrix::identity(n)));
        for z in t.as_slice() {
            worst_unitary = worst_unitary.max((z.norm() - 1.0).abs());
        }
        for _ in 0..100 {
            let values: Vec<Complex64> =
                (0..n).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
            let f = GroupFunction::new(g.clone(), values).unwrap();
            let back = fourier_forward(&fourier_inverse(&f).unwrap()).unwrap();
            for (a, b) in back.values.iter().zip(&f.values) {
                worst_round_trip = worst_round_trip.max((a - b).norm());
            }
        }
    }

    let pool: Vec<FiniteAbelianGroup> =
        [vec![2], vec![5], vec![6], vec![2, 2], vec![4, 2], vec![3, 3], vec![2, 2, 2], vec![8, 2]]
            .iter()
            .map(|f| make_group(f).unwrap())
            .collect();
    let mut disagreements = 0;
    let mut negatives_seen = 0;
    for k in 0..1000 {
        let g = &pool[k % pool.len()];
        let n = g.size();
        let mut p = random_probability(&mut rng, n);
        if k >= 500 {
            // push one entry below zero and keep the total at one
            let i = rng.random_range(0..n);
            let mut j = rng.random_range(0..n);
            if j == i {
                j = (i + 1) % n;
            }
            let delta = p[i] + rng.random_range(1e-4..0.2);
            p[i] -= delta;
            p[j] += delta;
        }
        let direct = p.iter().all(|&x| x >= 0.0);
        negatives_seen += (!direct) as usize;
        let mu = GroupFunction::from_real(g.clone(), &p).unwrap();
        let phi = fourier_inverse(&mu).unwrap();
        let check = classical_bochner_check(&phi, tol()).unwrap();
        if check.verdict != direct {
            disagreements += 1;
        }
    }
    Outcome {
        pass: worst_unitary < HADAMARD_TOL
            && worst_round_trip < FOURIER_ROUND_TRIP_TOL
            && disagreements == 0
            && negatives_seen == 500,
        detail: format!(
            "{} groups, Hadamard residual {worst_unitary:.1e}, round trip {worst_round_trip:.1e}, {disagreements} disagreements on 1000 vectors",
            groups.len()
        ),
    }
}

fn criterion_10() -> Outcome {
    let mut classes: Vec<(i8, Vec<[Sign; 3]>, Vec<Complex64>)> = Vec::new();
    for s in all_signs() {
        let frame = qubit_frame(s).unwrap();
        let parity = qubit_parity(s);
        let t = triple_product_invariant(&frame).unwrap();
        match classes.iter_mut().find(|c| c.0 == parity) {
            Some(c) => {
                c.1.push(s);
                c.2.push(t);
            }
            None => classes.push((parity, vec![s], vec![t])),
        }
    }
    let sizes: Vec<usize> = classes.iter().map(|c| c.1.len()).collect();
    let constant = classes.iter().all(|c| c.2.iter().all(|t| (t - c.2[0]).norm() < 1e-12));
    let differ = classes.len() == 2 && (classes[0].2[0] - classes[1].2[0]).norm() > 1.0;

    // within a class some Pauli conjugation maps one frame onto the other
    let paulis = [ComplexMatrix::identity(2), Pauli::X.matrix(), Pauli::Y.matrix(), Pauli::Z.matrix()];
    let related = |a: [Sign; 3], b: [Sign; 3]| {
        let (fa, fb) = (qubit_frame(a).unwrap(), qubit_frame(b).unwrap());
        paulis.iter().any(|u| {
            fa.operators().iter().zip(fb.operators()).all(|(x, y)| (&(u * x) * &u.dagger()).max_abs_diff(y) < 1e-12)
        })
    };
    let mut within = true;
    let mut across = false;
    for a in all_signs() {
        for b in all_signs() {
            let same = qubit_parity(a) == qubit_parity(b);
            if same && !related(a, b) {
                within = false;
            }
            if !same && related(a, b) {
                across = true;
            }
        }
    }
    let invariants: Vec<String> = classes.iter().map(|c| format!("parity {:+}: Tr = {}", c.0, c.2[0])).collect();
    Outcome {
        pass: classes.len() == 2 && sizes == vec![4, 4] && constant && differ && within && !across,
        detail: format!("class sizes {sizes:?}, {}", invariants.join(", ")),
    }
}

fn main() {
    let start = Instant::now();
    let (one, two) = criteria_1_and_2();
    let results = vec![
        ("M^Q PSD iff the operator is a density operator", one),
        ("M^C PSD iff the quasi-probabilities are nonnegative", two),
        ("Weyl M^Q matches the qudit phase formula", criterion_3()),
        ("Weyl distribution equals the Gross Wigner function", criterion_4()),
        ("stabilizer states positive, random pure states negative", criterion_5()),
        ("faithful frames: traceless, orthogonal, orthogonal Fourier frame", criterion_6()),
        ("Z_2^3 frame: single zero component, exact reconstruction", criterion_7()),
        ("cocycle phase conventions and 2-cocycle identity", criterion_8()),
        ("character tables, Fourier round trip, classical positivity", criterion_9()),
        ("qubit frames fall into two sign classes", criterion_10()),
    ];
    let mut failed = 0;
    for (k, (name, outcome)) in results.iter().enumerate() {
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status}: {name} ({})", k + 1, outcome.detail);
        failed += (!outcome.pass) as usize;
    }
    println!("{} of {} criteria passed in {:.1?}", results.len() - failed, results.len(), start.elapsed());
    if failed > 0 {
        std::process::exit(1);
    }
}
