mod common;

use macrovar::diagnostics::{
    cross_correlations, granger_wald, residual_cross_correlations, serial_correlation_lm,
    serial_correlation_lm_with, stability_of, stability_roots, Presample, ALL_EXCLUDED,
};
use macrovar::var::{companion_matrix, estimate_var_matrix, simulate_var, VarSpec};
use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

fn noise(rng: &mut impl Rng, n: usize, k: usize) -> DMatrix<f64> {
    DMatrix::from_fn(n, k, |_, _| rng.sample::<f64, _>(StandardNormal))
}

#[test]
fn granger_wald_matches_restriction_matrix_oracle() {
    let mut rng = common::rng(31);
    for (k, p, n) in [(2, 1, 60), (3, 2, 80)] {
        let process = common::random_stable_process(&mut rng, k, p);
        let data = simulate_var(&process, n, 30, None, &mut rng).unwrap();
        let est = estimate_var_matrix(&data, &common::names(k), VarSpec::new(p)).unwrap();
        let x = est.regressors();
        let y = est.endog();
        let m = x.ncols();
        let results = granger_wald(&est).unwrap();
        assert_eq!(results.len(), k * k);
        for res in &results {
            let i = est
                .variables
                .iter()
                .position(|v| *v == res.dependent)
                .unwrap();
            let excluded: Vec<usize> = if res.excluded == ALL_EXCLUDED {
                (0..k).filter(|&j| j != i).collect()
            } else {
                vec![est
                    .variables
                    .iter()
                    .position(|v| *v == res.excluded)
                    .unwrap()]
            };
            // regressor layout: [1, y_{t-1}', ..., y_{t-p}']
            let rows: Vec<usize> = excluded
                .iter()
                .flat_map(|&j| (1..=p).map(move |l| i * m + 1 + (l - 1) * k + j))
                .collect();
            let oracle = common::restriction_wald(&x, &y, &rows);
            assert!(
                (res.chi_sq - oracle).abs() < 1e-8 * (1.0 + oracle),
                "{} vs {oracle}",
                res.chi_sq
            );
            assert_eq!(res.df, p * excluded.len());
            assert!((0.0..=1.0).contains(&res.p_value));
        }
        for i in 0..k {
            let eq: Vec<_> = results
                .iter()
                .filter(|r| r.dependent == est.variables[i])
                .collect();
            let blocks: usize = eq
                .iter()
                .filter(|r| r.excluded != ALL_EXCLUDED)
                .map(|r| r.df)
                .sum();
            let all = eq.iter().find(|r| r.excluded == ALL_EXCLUDED).unwrap();
            assert_eq!(all.df, blocks);
        }
    }
}

#[test]
fn wald_statistics_are_invariant_to_rescaling_a_variable() {
    let mut rng = common::rng(32);
    let est = common::random_estimate(&mut rng, 3, 2, 70);
    let mut scaled = est.data.clone();
    scaled.column_mut(1).scale_mut(7.3);
    let est2 = estimate_var_matrix(&scaled, &est.variables, VarSpec::new(2)).unwrap();
    for (a, b) in granger_wald(&est)
        .unwrap()
        .iter()
        .zip(granger_wald(&est2).unwrap())
    {
        assert!((a.chi_sq - b.chi_sq).abs() < 1e-8 * a.chi_sq.max(1.0));
    }
}

#[test]
fn cross_correlations_match_direct_moments() {
    let mut rng = common::rng(33);
    let u = noise(&mut rng, 50, 3) + DMatrix::from_element(50, 3, 2.0);
    let res = cross_correlations(&u, 5).unwrap();
    let n = 50.0;
    let mean: Vec<f64> = (0..3).map(|j| u.column(j).sum() / n).collect();
    let cov = |i: usize, j: usize, l: isize| -> f64 {
        (0..50isize)
            .filter(|t| (0..50).contains(&(t - l)))
            .map(|t| (u[(t as usize, i)] - mean[i]) * (u[((t - l) as usize, j)] - mean[j]))
            .sum::<f64>()
            / n
    };
    for l in 0..=5isize {
        let c = &res.by_lag[l as usize];
        for i in 0..3 {
            for j in 0..3 {
                let direct = cov(i, j, l) / (cov(i, i, 0) * cov(j, j, 0)).sqrt();
                assert!((c[(i, j)] - direct).abs() < 1e-12);
                // lead correlations are the transpose of lag correlations
                let lead = cov(j, i, -l) / (cov(i, i, 0) * cov(j, j, 0)).sqrt();
                assert!((c[(i, j)] - lead).abs() < 1e-12);
            }
        }
    }
    let c0 = &res.by_lag[0];
    assert!((c0 - c0.transpose()).amax() < 1e-15);
    assert!((0..3).all(|i| c0[(i, i)] == 1.0));
    assert!((res.band - 1.0 / n.sqrt()).abs() < 1e-15);
}

#[test]
fn white_noise_cross_correlations_stay_inside_three_bands() {
    let mut rng = common::rng(34);
    let u = noise(&mut rng, 10_000, 3);
    let res = cross_correlations(&u, 12).unwrap();
    for c in &res.by_lag[1..] {
        assert!(c.amax() < 3.0 * res.band);
    }
    assert!(res
        .by_lag
        .iter()
        .all(|c| c.iter().all(|v| (-1.0..=1.0).contains(v))));
}

#[test]
fn cross_correlation_errors() {
    let u = DMatrix::from_fn(20, 2, |t, j| if j == 0 { 1.0 } else { t as f64 });
    assert!(cross_correlations(&u, 3).is_err());
    let mut rng = common::rng(35);
    assert!(cross_correlations(&noise(&mut rng, 20, 2), 18).is_err());
}

#[test]
fn lm_statistic_matches_two_fit_likelihood_ratio() {
    let mut rng = common::rng(36);
    let est = common::random_estimate(&mut rng, 2, 1, 60);
    let lm = serial_correlation_lm(&est, 3).unwrap();
    let x = est.regressors();
    for h in 1..=3 {
        let at = common::two_fit_lre(&x, &est.residuals, &[h]);
        assert!((lm.at_lag[h - 1].lre_stat - at).abs() < 1e-8 * (1.0 + at));
        let cum: Vec<usize> = (1..=h).collect();
        let all = common::two_fit_lre(&x, &est.residuals, &cum);
        assert!((lm.cumulative[h - 1].lre_stat - all).abs() < 1e-8 * (1.0 + all));
        assert_eq!(lm.at_lag[h - 1].df, 4);
        assert_eq!(lm.cumulative[h - 1].df, 4 * h);
    }
    // the lag-1 cumulative test is the lag-1 test
    assert_eq!(lm.at_lag[0], lm.cumulative[0]);
}

#[test]
fn rao_denominator_degrees_of_freedom_are_fractional() {
    let mut rng = common::rng(37);
    for (n, denom) in [(35, 51.3), (33, 46.4)] {
        let est = common::random_estimate(&mut rng, 3, 2, n);
        let row = serial_correlation_lm(&est, 1).unwrap().at_lag[0];
        assert_eq!(row.df, 9);
        assert_eq!(row.df_num, 9.0);
        assert!(
            ((row.df_denom * 10.0).round() / 10.0 - denom).abs() < 1e-9,
            "{}",
            row.df_denom
        );
        assert!(row.lre_stat >= 0.0 && row.rao_f >= 0.0);
        assert!((0.0..=1.0).contains(&row.p_lre) && (0.0..=1.0).contains(&row.p_rao));
    }
}

#[test]
fn trimmed_presample_uses_fewer_rows() {
    let mut rng = common::rng(38);
    let est = common::random_estimate(&mut rng, 2, 1, 60);
    let zero = serial_correlation_lm_with(&est, 2, Presample::ZeroFill).unwrap();
    let trim = serial_correlation_lm_with(&est, 2, Presample::Trim).unwrap();
    assert!(trim.at_lag[1].df_denom < zero.at_lag[1].df_denom);
}

#[test]
fn stability_roots_are_companion_eigenvalues() {
    let mut rng = common::rng(39);
    for (k, p) in [(2, 1), (3, 2), (2, 3)] {
        let process = common::random_stable_process(&mut rng, k, p);
        let res = stability_of(&process.coefs);
        let mut direct: Vec<f64> = companion_matrix(&process.coefs)
            .complex_eigenvalues()
            .iter()
            .map(|c| c.norm())
            .collect();
        direct.sort_by(|a, b| b.partial_cmp(a).unwrap());
        assert_eq!(res.roots.len(), k * p);
        for (m, d) in res.moduli().iter().zip(&direct) {
            assert!((m - d).abs() < 1e-10);
        }
        assert!(res.moduli().windows(2).all(|w| w[0] >= w[1]));
        let prod: f64 = res.moduli().iter().product();
        assert!((prod - process.coefs[p - 1].determinant().abs()).abs() < 1e-8);
        for r in res.roots.iter().filter(|r| r.im.abs() > 1e-12) {
            assert!(res
                .roots
                .iter()
                .any(|c| (c.re - r.re).abs() < 1e-10 && (c.im + r.im).abs() < 1e-10));
        }
        assert!(res.stable);
    }
}

#[test]
fn stability_of_diagonal_and_unit_root_systems() {
    let half = stability_of(&[DMatrix::identity(3, 3) * 0.5]);
    assert!(half
        .roots
        .iter()
        .all(|r| (r.re - 0.5).abs() < 1e-12 && r.im.abs() < 1e-12));
    assert!(half.stable);
    let unit = stability_of(&[DMatrix::identity(3, 3)]);
    assert!((unit.max_modulus() - 1.0).abs() < 1e-12);
    assert!(!unit.stable);
}

#[test]
fn estimated_stability_uses_estimated_coefficients() {
    let mut rng = common::rng(40);
    let est = common::random_estimate(&mut rng, 3, 2, 80);
    assert_eq!(stability_roots(&est), stability_of(&est.coefs));
    let cc = residual_cross_correlations(&est, 4).unwrap();
    assert_eq!(cc.variables, est.variables);
}
