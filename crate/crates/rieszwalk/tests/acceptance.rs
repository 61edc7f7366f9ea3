//! Acceptance suite: one test per criterion, each printing a pass/fail
//! line (visible with `cargo test -- --nocapture`). Tolerances are pinned
//! here, not configurable.

use num_complex::Complex64 as C64;

use rieszwalk::analysis::{
    check_conjecture_distribution, check_selfsimilarity, return_prob_closed_form,
    return_prob_simple, window_selfsimilarity,
};
use rieszwalk::genfunc::psi_hat_origin;
use rieszwalk::measure::{moment, schur_series, MeasureSpec};
use rieszwalk::scalar::{Rat, Scalar};
use rieszwalk::schur::{nonzero_xi, verblunsky_direct};
use rieszwalk::walk::{
    build_blocks, coin_shift_step, evolve_with, operator_for, step, FactorizedCoins, Precision,
    WalkState,
};

fn report(criterion: &str, pass: bool, detail: String) {
    let verdict = if pass { "PASS" } else { "FAIL" };
    println!("{verdict} {criterion}: {detail}");
    assert!(pass, "{criterion}: {detail}");
}

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn origin_start() -> (C64, C64) {
    (c(1.0), c(0.0))
}

/// Criterion 1: simulated return probability matches the closed-form law
/// over the whole 0..=1365 horizon, with the exact zero pattern.
#[test]
fn criterion_1_theorem_full_horizon() {
    let start = std::time::Instant::now();
    let spec = MeasureSpec::riesz();
    let mut max_dev: f64 = 0.0;
    let mut max_zero: f64 = 0.0;
    evolve_with(origin_start(), &spec, 1365, Precision::Double, |s| {
        let simulated = s.probability(0);
        let closed = return_prob_simple(s.t() as u64).to_f64();
        if closed == 0.0 {
            max_zero = max_zero.max(simulated);
        } else {
            max_dev = max_dev.max((simulated - closed).abs());
        }
    })
    .unwrap();
    let elapsed = start.elapsed().as_secs_f64();
    let pass = max_dev <= 1e-9 && max_zero < 1e-18 && elapsed < 60.0;
    report(
        "1 (theorem, full horizon)",
        pass,
        format!(
            "max |sim - closed| = {max_dev:.3e} (tol 1e-9), max prob on zeros = {max_zero:.3e} (tol 1e-18), runtime {elapsed:.2}s (< 60s)"
        ),
    );
}

/// Criterion 2: mu_{4^k}(0) = 1/4 for k = 1..5, and the general-state law
/// for 20 pseudo-random normalized initial states over t <= 340.
#[test]
fn criterion_2_power_times_and_general_states() {
    let spec = MeasureSpec::riesz();
    let mut quarter_dev: f64 = 0.0;
    evolve_with(origin_start(), &spec, 1024, Precision::Double, |s| {
        let t = s.t();
        if [4usize, 16, 64, 256, 1024].contains(&t) {
            quarter_dev = quarter_dev.max((s.probability(0) - 0.25).abs());
        }
    })
    .unwrap();

    // Deterministic pseudo-random states from a fixed-seed generator.
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    let mut rng = StdRng::seed_from_u64(0x5eed_0001);
    let blocks = operator_for(&spec, 340, Precision::Double).unwrap();
    let mut general_dev: f64 = 0.0;
    for _ in 0..20 {
        let weight: f64 = rng.gen();
        let phase_a: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let phase_b: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let alpha = C64::from_polar(weight.sqrt(), phase_a);
        let beta = C64::from_polar((1.0 - weight).sqrt(), phase_b);
        let mut state = WalkState::origin(alpha, beta).unwrap();
        for t in 0..=340u64 {
            let closed = return_prob_closed_form(t, alpha, beta).unwrap().value;
            general_dev = general_dev.max((state.probability(0) - closed).abs());
            if t < 340 {
                state = step(&state, &blocks).unwrap();
            }
        }
    }
    let pass = quarter_dev <= 1e-9 && general_dev <= 1e-9;
    report(
        "2 (powers of four + general states)",
        pass,
        format!(
            "max |mu_4^k - 1/4| = {quarter_dev:.3e}, 20-state max dev = {general_dev:.3e} (tol 1e-9)"
        ),
    );
}

/// Criterion 3: the coarse-grained values read off the paper's time-4, 16,
/// 64 distributions.
#[test]
fn criterion_3_distribution_values() {
    let spec = MeasureSpec::riesz();
    let mut rows = std::collections::BTreeMap::new();
    evolve_with(origin_start(), &spec, 64, Precision::Double, |s| {
        if [4usize, 16, 64].contains(&s.t()) {
            rows.insert(s.t(), s.distribution());
        }
    })
    .unwrap();
    let nu = |t: usize, x: usize| rieszwalk::analysis::nu(&rows[&t], x);

    let mut worst_exact: f64 = 0.0;
    worst_exact = worst_exact.max((nu(4, 4) - 0.75).abs());
    worst_exact = worst_exact.max((nu(16, 12) - 0.375).abs());
    worst_exact = worst_exact.max((nu(16, 16) - 0.375).abs());

    let mut worst_printed: f64 = 0.0;
    for (x, expect) in [(44, 0.1895), (48, 0.1854), (60, 0.1840), (64, 0.1909)] {
        worst_printed = worst_printed.max((nu(64, x) - expect).abs());
    }
    let pass = worst_exact <= 1e-12 && worst_printed <= 5e-4;
    report(
        "3 (paper distribution values)",
        pass,
        format!(
            "exact nu deviations {worst_exact:.3e} (tol 1e-12), four-digit nu_64 deviations {worst_printed:.3e} (tol 5e-4)"
        ),
    );
}

/// Criterion 4: the time-4^n distribution law for n = 2, 3, 4.
#[test]
fn criterion_4_conjecture_distribution() {
    let spec = MeasureSpec::riesz();
    let mut rows = std::collections::BTreeMap::new();
    evolve_with(origin_start(), &spec, 256, Precision::Double, |s| {
        if [16usize, 64, 256].contains(&s.t()) {
            rows.insert(s.t(), s.distribution());
        }
    })
    .unwrap();
    let mut pass = true;
    let mut details = Vec::new();
    for n in [2u32, 3, 4] {
        let report_n = check_conjecture_distribution(n, &rows[&(4usize.pow(n))]);
        let ok = (report_n.origin_mass - 0.25).abs() <= 1e-9
            && report_n.off_support_leak <= 1e-9
            && report_n.max_abs_eps < 0.03;
        pass &= ok;
        details.push(format!(
            "n={n}: origin {:.12}, leak {:.1e}, max|eps| {:.5}",
            report_n.origin_mass, report_n.off_support_leak, report_n.max_abs_eps
        ));
    }
    report(
        "4 (distribution conjecture, n = 2..4)",
        pass,
        details.join("; "),
    );
}

/// Criterion 5: cell-wise agreement of the distributions at times 2t and
/// 8t for t in {1, 2, 4, ..., 128}, in the exact sum form.
#[test]
fn criterion_5_selfsimilarity_cells() {
    let spec = MeasureSpec::riesz();
    let ts: Vec<u64> = vec![1, 2, 4, 8, 16, 32, 64, 128];
    let mut wanted = std::collections::BTreeSet::new();
    for &t in &ts {
        wanted.insert(2 * t);
        wanted.insert(8 * t);
    }
    let mut rows = std::collections::BTreeMap::new();
    evolve_with(origin_start(), &spec, 1024, Precision::Double, |s| {
        if wanted.contains(&(s.t() as u64)) {
            rows.insert(s.t() as u64, s.distribution());
        }
    })
    .unwrap();
    let mut worst: f64 = 0.0;
    for &t in &ts {
        let dev = check_selfsimilarity(t, &rows[&(2 * t)], &rows[&(8 * t)]).unwrap();
        worst = worst.max(dev);
    }
    let pass = worst <= 1e-9;
    report(
        "5 (coarse-grained self-similarity)",
        pass,
        format!("max cell deviation {worst:.3e} (tol 1e-9)"),
    );
}

/// Criterion 6: the origin amplitude by three routes: simulation, the
/// generating function, and the moments. Series vs moments is exact;
/// simulation within 1e-10.
#[test]
fn criterion_6_three_route_origin() {
    let spec = MeasureSpec::riesz();
    let series = psi_hat_origin(&spec, 200).unwrap();
    let mut exact_match = true;
    for n in 0..=200i64 {
        if series.coeff(n as usize) != &moment(n, &spec) {
            exact_match = false;
        }
    }
    let mut sim_dev: f64 = 0.0;
    evolve_with(origin_start(), &spec, 200, Precision::Double, |s| {
        let mu = moment(s.t() as i64, &spec).to_f64();
        let amp = s.amp(0)[0];
        sim_dev = sim_dev.max((amp - c(mu)).norm());
    })
    .unwrap();
    let pass = exact_match && sim_dev <= 1e-10;
    report(
        "6 (three-route origin agreement)",
        pass,
        format!(
            "generating function == moments exactly: {exact_match}; simulation dev {sim_dev:.3e} (tol 1e-10)"
        ),
    );
}

/// Criterion 7: Schur pipeline correctness: the pinned exact parameters,
/// the mod-4 sieve over 160 parameters, exact-vs-double agreement, and the
/// Schur-function coefficients.
#[test]
fn criterion_7_schur_correctness() {
    let spec = MeasureSpec::riesz();
    let exact = verblunsky_direct::<Rat>(&spec, 160).unwrap();
    let mut ok = exact.alpha(0).is_zero()
        && exact.alpha(1).is_zero()
        && exact.alpha(2).is_zero()
        && exact.alpha(3) == Rat::from_ratio(1, 2)
        && exact.alpha(7) == Rat::from_ratio(-1, 3);
    for (n, alpha) in exact.alphas().iter().enumerate() {
        if n % 4 != 3 && !alpha.is_zero() {
            ok = false;
        }
    }
    // The sieve holds, so the nonzero extraction must accept the sequence.
    let xi = nonzero_xi(&exact, 4).unwrap();
    ok &= xi.len() == 40;

    let double = verblunsky_direct::<f64>(&spec, 65).unwrap();
    let mut path_dev: f64 = 0.0;
    for k in 0..=64 {
        path_dev = path_dev.max((exact.alpha_f64(k) - double.alpha(k)).abs());
    }
    ok &= path_dev <= 1e-12;

    let f = schur_series(&rieszwalk::measure::caratheodory_series(&spec, 16)).unwrap();
    ok &= f.coeff(3) == &Rat::from_ratio(1, 2)
        && f.coeff(7) == &Rat::from_ratio(-1, 4)
        && f.coeff(11) == &Rat::from_ratio(3, 8)
        && f.coeff(15) == &Rat::from_ratio(3, 16);
    report(
        "7 (Schur correctness)",
        ok,
        format!(
            "alpha_3 = 1/2, alpha_7 = -1/3, sieve exact over 160, exact-vs-double dev {path_dev:.3e} (tol 1e-12), f coefficients exact"
        ),
    );
}

/// Criterion 8: structural invariants: unitarity, parity, finite speed
/// over t <= 1365, and factorized-vs-matrix agreement over t <= 256.
#[test]
fn criterion_8_structural_invariants() {
    let spec = MeasureSpec::riesz();
    let mut norm_dev: f64 = 0.0;
    let mut parity_dev: f64 = 0.0;
    let mut speed_ok = true;
    evolve_with(origin_start(), &spec, 1365, Precision::Double, |s| {
        norm_dev = norm_dev.max((s.norm_sq() - 1.0).abs());
        parity_dev = parity_dev.max(s.parity_defect());
        speed_ok &= s.support_end() <= s.t() + 1;
    })
    .unwrap();

    let seq = rieszwalk::schur::verblunsky_for_measure::<f64>(&spec, 2 * 256 + 6).unwrap();
    let blocks = build_blocks(&seq, 257).unwrap();
    let coins = FactorizedCoins::from_xi(
        &nonzero_xi(&seq, 4)
            .unwrap()
            .iter()
            .map(|x| x.to_f64())
            .collect::<Vec<_>>(),
    );
    let mut matrix_state = WalkState::origin(c(1.0), c(0.0)).unwrap();
    let mut factor_state = matrix_state.clone();
    let mut split_dev: f64 = 0.0;
    for _ in 0..256 {
        matrix_state = step(&matrix_state, &blocks).unwrap();
        factor_state = coin_shift_step(&factor_state, &coins).unwrap();
        let end = matrix_state.support_end().max(factor_state.support_end());
        for x in 0..=end {
            for i in 0..2 {
                split_dev =
                    split_dev.max((matrix_state.amp(x)[i] - factor_state.amp(x)[i]).norm());
            }
        }
    }
    let pass = norm_dev <= 1e-12 && parity_dev <= 1e-12 && speed_ok && split_dev <= 1e-12;
    report(
        "8 (structural invariants)",
        pass,
        format!(
            "norm dev {norm_dev:.3e}, parity dev {parity_dev:.3e}, finite speed {speed_ok}, factorized-vs-matrix dev {split_dev:.3e} (tol 1e-12)"
        ),
    );
}

/// Criterion 9: the generalized walks: m = 2 stays put; m = 3, 5 match the
/// moment formula and return with probability 1/4 at times m^k.
#[test]
fn criterion_9_generalized_walks() {
    let m2 = MeasureSpec::new(2).unwrap();
    let mut m2_dev: f64 = 0.0;
    evolve_with(origin_start(), &m2, 100, Precision::Exact, |s| {
        m2_dev = m2_dev.max((s.probability(0) - 1.0).abs());
    })
    .unwrap();

    let mut moment_dev: f64 = 0.0;
    let mut quarter_dev: f64 = 0.0;
    for m in [3u32, 5] {
        let spec = MeasureSpec::new(m).unwrap();
        evolve_with(origin_start(), &spec, 200, Precision::Double, |s| {
            let t = s.t() as i64;
            let mu_t = moment(t, &spec).to_f64();
            let mu_next = moment(t + 1, &spec).to_f64();
            let closed = mu_t * mu_t + mu_next * mu_next;
            moment_dev = moment_dev.max((s.probability(0) - closed).abs());
            for k in 1..=3u32 {
                if t == (m as i64).pow(k) {
                    quarter_dev = quarter_dev.max((s.probability(0) - 0.25).abs());
                }
            }
        })
        .unwrap();
    }
    let pass = m2_dev <= 1e-12 && moment_dev <= 1e-9 && quarter_dev <= 1e-9;
    report(
        "9 (generalized walks)",
        pass,
        format!(
            "m=2 max |mu - 1| = {m2_dev:.3e} (tol 1e-12), m=3/5 moment-law dev {moment_dev:.3e} (tol 1e-9), m^k quarter dev {quarter_dev:.3e}"
        ),
    );
}

/// Criterion 10: closed-form window self-similarity around 4^k, 4^{k+1},
/// and 4^{k+1} +- 4^k, exact in rationals for k = 2, 3.
#[test]
fn criterion_10_window_selfsimilarity() {
    let mut pass = true;
    let mut details = Vec::new();
    for k in [2u32, 3] {
        let cmp = window_selfsimilarity(k);
        pass &= cmp.windows_identical && cmp.center_square && cmp.side_windows_quarter_scaled;
        details.push(format!(
            "k={k}: identical {}, center = square {}, side windows quarter-scaled {}",
            cmp.windows_identical, cmp.center_square, cmp.side_windows_quarter_scaled
        ));
    }
    report("10 (window self-similarity)", pass, details.join("; "));
}
