//! Reference processes used by the examples, the bundled CSV fixtures and
//! the tests.

use nalgebra::{DMatrix, DVector};

use crate::var::VarProcess;

/// Variable names of the reference system, in estimation order.
pub const REFERENCE_VARIABLES: [&str; 3] = ["hdi", "gov_exp_health", "gov_exp_edu"];

/// Largest companion-root modulus reported for the Bangladesh VAR(2).
pub const BANGLADESH_MAX_MODULUS: f64 = 0.997648;

/// Residual standard deviations of the Bangladesh equations.
pub const BANGLADESH_NOISE_SD: [f64; 3] = [0.0040, 0.0609, 16.5207];

/// The Bangladesh VAR(2) point estimates.
///
/// The reference coefficients are rounded to four decimals, which on their
/// own put the largest root marginally outside the unit circle (1.00015).
/// The four small education-spending coefficients in the HDI and health
/// equations are set to values inside their rounding intervals that reproduce
/// the reference roots; every other entry is taken unchanged.
///
/// Noise is Gaussian with the reference equation standard errors and the
/// contemporaneous HDI correlations (0.076 with health, -0.054 with
/// education); the health/education correlation is not reported and set to 0.
pub fn bangladesh_var2() -> VarProcess {
    #[rustfmt::skip]
    let a1 = DMatrix::from_row_slice(3, 3, &[
        0.8518, -0.0142, 3.57781542e-06,
        -0.0526, 0.9870, 8.70458555e-05,
        -1251.811, 80.2312, 0.4697,
    ]);
    #[rustfmt::skip]
    let a2 = DMatrix::from_row_slice(3, 3, &[
        0.1196, 0.0051, 8.89072002e-05,
        0.9226, -0.3488, 3.87518451e-04,
        1194.255, -4.4162, 0.2109,
    ]);
    let intercept = DVector::from_vec(vec![0.0398, 0.2884, -96.5367]);
    let sd = BANGLADESH_NOISE_SD;
    let corr = DMatrix::from_row_slice(
        3,
        3,
        &[1.0, 0.076, -0.054, 0.076, 1.0, 0.0, -0.054, 0.0, 1.0],
    );
    let noise_cov = DMatrix::from_fn(3, 3, |i, j| corr[(i, j)] * sd[i] * sd[j]);
    VarProcess {
        coefs: vec![a1, a2],
        intercept,
        noise_cov,
    }
}

/// First year of the bundled synthetic panels.
pub const FIXTURE_START_YEAR: i32 = 1992;
/// Rows in each bundled synthetic panel.
pub const FIXTURE_YEARS: usize = 33;

/// Recipe for one bundled synthetic country file.
#[derive(Debug, Clone, Copy)]
pub struct SyntheticCountry {
    pub name: &'static str,
    pub seed: u64,
    /// Values for the two years before [`FIXTURE_START_YEAR`], oldest first.
    pub presample: [[f64; 3]; 2],
    /// `(year, column)` cells left empty to exercise interpolation.
    pub blanks: &'static [(i32, usize)],
}

/// The three panels under `data/fixtures/`, all drawn from
/// [`bangladesh_var2`] with different seeds and starting points.
pub const SYNTHETIC_COUNTRIES: [SyntheticCountry; 3] = [
    SyntheticCountry {
        name: "bangladesh",
        seed: 3,
        presample: [[0.385, 2.0, 20.0], [0.39, 2.0, 24.0]],
        blanks: &[],
    },
    SyntheticCountry {
        name: "india",
        seed: 2,
        presample: [[0.425, 2.4, 30.0], [0.43, 2.4, 33.0]],
        blanks: &[(2001, 0), (2009, 2), (2010, 2)],
    },
    SyntheticCountry {
        name: "pakistan",
        seed: 5,
        presample: [[0.40, 1.9, 25.0], [0.405, 1.9, 27.0]],
        blanks: &[(2015, 1)],
    },
];

/// `T x 3` draw from the reference process for one synthetic country.
pub fn synthetic_matrix(spec: &SyntheticCountry) -> crate::Result<DMatrix<f64>> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(spec.seed);
    let init: Vec<DVector<f64>> = spec
        .presample
        .iter()
        .map(|r| DVector::from_column_slice(r))
        .collect();
    crate::var::simulate_var(&bangladesh_var2(), FIXTURE_YEARS, 0, Some(&init), &mut rng)
}

/// CSV text of a bundled fixture: `year,hdi,gov_exp_health,gov_exp_edu`,
/// HDI to three decimals and spending to two, blanks left empty.
pub fn synthetic_csv(spec: &SyntheticCountry) -> crate::Result<String> {
    let m = synthetic_matrix(spec)?;
    let mut out = String::from("year,hdi,gov_exp_health,gov_exp_edu\n");
    for t in 0..FIXTURE_YEARS {
        let year = FIXTURE_START_YEAR + t as i32;
        let cell = |j: usize, digits: usize| {
            if spec.blanks.contains(&(year, j)) {
                String::new()
            } else {
                format!("{:.*}", digits, m[(t, j)])
            }
        };
        out.push_str(&format!(
            "{year},{},{},{}\n",
            cell(0, 3),
            cell(1, 2),
            cell(2, 2)
        ));
    }
    Ok(out)
}
