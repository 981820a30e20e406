//! Acceptance criteria, one test per criterion. Each test prints a single
//! `criterion N: PASS|FAIL` line before asserting.
//!
//! Run with `cargo test --test acceptance -- --nocapture --test-threads 1`
//! to see the lines in order.

use std::time::{Duration, Instant};

use discrete_phase::metaplectic::{u_hminus, u_hplus, u_ht};
use discrete_phase::oracle::{solve_covariance, unextended_even, verify_sw_kernel};
use discrete_phase::qops::{delta_cohendet, weyl_symmetric};
use discrete_phase::symplectic::{decompose_traced, generator, h_t};
use discrete_phase::wigner::weyl_quantize;
use discrete_phase::{
    equal_up_to_phase, enumerate_group, CMatrix, Complex, DeltaFamily, Gen, Lattice, Method, Metaplectic, Parity,
    QuantumState, RootsOfUnity, SympMat,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn report(n: &str, pass: bool, detail: String) {
    println!("criterion {n}: {} ({detail})", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} failed: {detail}");
}

fn symmetric_order(n: usize) -> Vec<usize> {
    let h = (n as i64 - 1) / 2;
    (-h..=h).map(|i| i.rem_euclid(n as i64) as usize).collect()
}

/// The four groups exercised by the full-group criteria.
fn lattices_and_groups() -> Vec<(Lattice, Vec<SympMat>)> {
    [Lattice::odd(3), Lattice::odd(5), Lattice::odd(7), Lattice::even(2)]
        .into_iter()
        .map(|l| {
            let l = l.unwrap();
            (l, enumerate_group(l.modulus()).unwrap())
        })
        .collect()
}

// Exponents of w = exp(2 pi i / 7), rows and columns in symmetric order -3..=3.
const U_PLUS_7: [[i64; 7]; 7] = [
    [0, 4, 2, 1, 1, 2, 4],
    [4, 0, 4, 2, 1, 1, 2],
    [2, 4, 0, 4, 2, 1, 1],
    [1, 2, 4, 0, 4, 2, 1],
    [1, 1, 2, 4, 0, 4, 2],
    [2, 1, 1, 2, 4, 0, 4],
    [4, 2, 1, 1, 2, 4, 0],
];
const U_MINUS_7: [i64; 7] = [1, 2, 4, 0, 4, 2, 1];

#[test]
fn criterion_01_odd_closed_forms_n7() {
    let start = Instant::now();
    let order = symmetric_order(7);
    let up = u_hplus::<f64>(7, Parity::Odd).unwrap().into_matrix().permuted(&order);
    let um = u_hminus::<f64>(7, Parity::Odd).unwrap().into_matrix().permuted(&order);
    let elapsed = start.elapsed();
    let root = |e: i64| Complex::from_polar(1.0, 2.0 * std::f64::consts::PI * e as f64 / 7.0);
    let s = 1.0 / 7f64.sqrt();
    let mut dev = 0.0f64;
    for i in 0..7 {
        for k in 0..7 {
            dev = dev.max((up[(i, k)] - root(U_PLUS_7[i][k]) * s).norm());
            let expect = if i == k { root(U_MINUS_7[i]) } else { Complex::new(0.0, 0.0) };
            dev = dev.max((um[(i, k)] - expect).norm());
        }
    }
    report("1", dev < 1e-12 && elapsed < Duration::from_secs(1), format!("max deviation {dev:e}, {elapsed:?}"));
}

#[test]
fn criterion_02_even_closed_forms_n2() {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let c = |re, im| Complex::new(re, im);
    let up = u_hplus::<f64>(2, Parity::Even).unwrap().into_matrix();
    let um = u_hminus::<f64>(2, Parity::Even).unwrap().into_matrix();
    let want_up = CMatrix::from_rows(vec![vec![c(r, 0.0), c(0.0, r)], vec![c(0.0, r), c(r, 0.0)]]).unwrap();
    let want_um = CMatrix::diagonal(&[c(1.0, 0.0), c(0.0, 1.0)]);
    let dev = up.max_abs_diff(&want_up).max(um.max_abs_diff(&want_um));
    let eq = equal_up_to_phase(&CMatrix::identity(2), &up.pow(4), 1e-12).unwrap();
    let phase = eq.phase.unwrap_or(c(f64::NAN, f64::NAN));
    let phase_dev = (phase - c(-1.0, 0.0)).norm();
    report(
        "2",
        dev < 1e-12 && eq.equivalent && phase_dev < 1e-12,
        format!("entry deviation {dev:e}, U(h+)^4 = ({:.3}, {:.3}) I", phase.re, phase.im),
    );
}

#[test]
fn criterion_03_generator_covariance() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let cases = [(3, Parity::Odd), (5, Parity::Odd), (7, Parity::Odd), (9, Parity::Odd), (15, Parity::Odd)]
        .into_iter()
        .chain([(2, Parity::Even), (4, Parity::Even), (6, Parity::Even)]);
    for (n, parity) in cases {
        let l = Lattice::new(n, parity).unwrap();
        let fam = DeltaFamily::<f64>::new(&l);
        let md = l.modulus();
        let pairs = [
            (generator(Gen::Plus, md).unwrap(), u_hplus::<f64>(n, parity).unwrap()),
            (generator(Gen::Minus, md).unwrap(), u_hminus::<f64>(n, parity).unwrap()),
        ];
        for (s, u) in pairs {
            worst = worst.max(fam.covariance_residual(u.matrix(), &s).unwrap());
        }
    }
    let elapsed = start.elapsed();
    report("3", worst < 1e-10 && elapsed < Duration::from_secs(30), format!("max residual {worst:e}, {elapsed:?}"));
}

#[test]
fn criterion_04_full_group_covariance() {
    let start = Instant::now();
    let mut worst = 0.0f64;
    let mut sizes = Vec::new();
    for (l, group) in lattices_and_groups() {
        sizes.push(group.len());
        let rep = Metaplectic::<f64>::new(l);
        let fam = DeltaFamily::<f64>::new(&l);
        for s in &group {
            let u = rep.u_of(s).unwrap();
            worst = worst.max(fam.covariance_residual(u.matrix(), s).unwrap());
        }
    }
    let elapsed = start.elapsed();
    let ok = sizes == [24, 120, 336, 48] && worst < 1e-9 && elapsed < Duration::from_secs(300);
    report("4", ok, format!("group sizes {sizes:?}, max residual {worst:e}, {elapsed:?}"));
}

#[test]
fn criterion_05_decomposition_round_trip() {
    let (mut total, mut euclid, mut exact) = (0usize, 0usize, 0usize);
    for (_, group) in lattices_and_groups() {
        for s in &group {
            total += 1;
            let (word, method) = decompose_traced(s).unwrap();
            if method == Method::Euclid {
                euclid += 1;
            }
            if word.evaluate() == *s {
                exact += 1;
            }
        }
    }
    let rate = 100.0 * euclid as f64 / total as f64;
    report(
        "5",
        exact == total,
        format!("{exact}/{total} exact, Euclid fast path {euclid}/{total} ({rate:.1}%), search fallback {}", total - euclid),
    );
}

#[test]
fn criterion_06_sw_kernel_odd_and_even_hermiticity() {
    let mut worst = 0.0f64;
    for n in [3, 5, 7, 9] {
        let r = verify_sw_kernel(&Lattice::odd(n).unwrap());
        worst = worst.max(r.hermiticity).max(r.unit_trace).max(r.traciality).max(r.translation.unwrap());
    }
    let mut herm = 0.0f64;
    for n in [2, 4] {
        herm = herm.max(verify_sw_kernel(&Lattice::even(n).unwrap()).hermiticity);
    }
    report(
        "6 (odd N all four properties, even N Hermiticity)",
        worst < 1e-12 && herm < 1e-12,
        format!("odd max residual {worst:e}, even Hermiticity {herm:e}"),
    );
}

#[test]
fn criterion_06_sw_kernel_even_unit_trace() {
    let mut worst = 0.0f64;
    let mut traces = Vec::new();
    for n in [2, 4] {
        let l = Lattice::even(n).unwrap();
        for (_, d) in DeltaFamily::<f64>::new(&l).iter() {
            let t = d.trace();
            worst = worst.max((t - Complex::new(1.0, 0.0)).norm());
            let rounded = t.re.round() as i64;
            if !traces.contains(&rounded) {
                traces.push(rounded);
            }
        }
    }
    traces.sort();
    report("6 (even N unit trace)", worst < 1e-12, format!("max |Tr - 1| = {worst:e}, observed traces {traces:?}"));
}

#[test]
fn criterion_07_translation_covariance() {
    let mut worst = 0.0f64;
    for n in [3usize, 5, 7] {
        let d00 = delta_cohendet::<f64>(n, 0, 0).unwrap();
        for m in 0..n as i64 {
            for k in 0..n as i64 {
                let w = weyl_symmetric::<f64>(n, m, k).unwrap();
                let moved = w.matmul(&d00).matmul(&w.adjoint());
                worst = worst.max(moved.max_abs_diff(&delta_cohendet(n, m, k).unwrap()));
            }
        }
    }
    report("7", worst < 1e-12, format!("max residual {worst:e}"));
}

#[test]
fn criterion_08_projectivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let mut worst = 0.0f64;
    let mut pairs = 0;
    for (l, group) in lattices_and_groups() {
        let rep = Metaplectic::<f64>::new(l);
        for _ in 0..200 {
            let s = group[rng.gen_range(0..group.len())];
            let t = group[rng.gen_range(0..group.len())];
            let lhs = rep.u_of(&s.multiply(&t).unwrap()).unwrap();
            let rhs = rep.u_of(&s).unwrap().matrix().matmul(rep.u_of(&t).unwrap().matrix());
            let eq = equal_up_to_phase(lhs.matrix(), &rhs, 1e-9).unwrap();
            worst = worst.max(eq.residual);
            pairs += 1;
        }
    }
    report("8", worst < 1e-9, format!("{pairs} pairs, max residual {worst:e}"));
}

#[test]
fn criterion_09_uniqueness() {
    let mut nullities = Vec::new();
    let mut worst = 0.0f64;
    let mut all_unitary = true;
    for (n, parity) in [(3, Parity::Odd), (5, Parity::Odd), (2, Parity::Even), (4, Parity::Even)] {
        let l = Lattice::new(n, parity).unwrap();
        let fam = DeltaFamily::<f64>::new(&l);
        let md = l.modulus();
        let cases = [
            (generator(Gen::Plus, md).unwrap(), u_hplus::<f64>(n, parity).unwrap()),
            (generator(Gen::Minus, md).unwrap(), u_hminus::<f64>(n, parity).unwrap()),
            (h_t(md).unwrap(), u_ht::<f64>(n, parity).unwrap()),
        ];
        for (s, closed) in cases {
            let sol = solve_covariance(&s, &fam).unwrap();
            nullities.push(sol.nullity);
            match sol.unitary_rep {
                Some(u) => worst = worst.max(equal_up_to_phase(closed.matrix(), &u, 1e-9).unwrap().residual),
                None => all_unitary = false,
            }
        }
    }
    let ok = nullities.iter().all(|&k| k == 1) && all_unitary && worst < 1e-9;
    report("9", ok, format!("nullities {nullities:?}, max phase-match residual {worst:e}"));
}

#[test]
fn criterion_10_unextended_even_has_no_unitary() {
    let r = unextended_even(2).unwrap();
    report(
        "10",
        !r.unitary_plus && !r.unitary_minus,
        format!(
            "modulus-2 group on N=2: nullity h+ {}, h- {}, unitary found: {}/{}",
            r.nullity_plus, r.nullity_minus, r.unitary_plus, r.unitary_minus
        ),
    );
}

#[test]
fn criterion_11_wigner_properties() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut worst = 0.0f64;
    for (n, parity) in [(3, Parity::Odd), (5, Parity::Odd), (7, Parity::Odd), (2, Parity::Even), (4, Parity::Even)] {
        let l = Lattice::new(n, parity).unwrap();
        let fam = DeltaFamily::<f64>::new(&l);
        let w = RootsOfUnity::<f64>::new(n);
        let stride = l.cells() / n;
        for _ in 0..100 {
            let psi = QuantumState::<f64>::random(n, &mut rng);
            let a = psi.amplitudes();
            let t = discrete_phase::wigner::wigner_with(&psi, &l, &fam).unwrap();
            worst = worst.max(t.max_imag()).max((t.sum() - 1.0).abs());
            let (pos, mom) = t.marginals();
            for i in 0..l.cells() {
                let (p, q) = if i % stride == 0 {
                    let x = i / stride;
                    let phi: Complex<f64> =
                        (0..n).map(|k| w.pow(-((x * k) as i64)) * a[k]).sum::<Complex<f64>>() / (n as f64).sqrt();
                    (a[x].norm_sqr(), phi.norm_sqr())
                } else {
                    (0.0, 0.0)
                };
                worst = worst.max((pos[i] - p).abs()).max((mom[i] - q).abs());
            }
        }
    }
    report("11", worst < 1e-11, format!("max residual {worst:e} over 500 states"));
}

#[test]
fn criterion_12_quantize_constant() {
    let mut worst = 0.0f64;
    for n in [3usize, 5] {
        let l = Lattice::odd(n).unwrap();
        for c in [1.0, -2.5, 0.125] {
            let grid = vec![c; l.cells() * l.cells()];
            let op = weyl_quantize(&grid, &l).unwrap();
            worst = worst.max(op.max_abs_diff(&CMatrix::identity(n).scale_real(c)));
        }
    }
    report("12", worst < 1e-12, format!("max deviation {worst:e}"));
}
