//! Annual series and country panels.
//!
//! Years are the only time index. A series starts at `start_year` and has one
//! slot per consecutive year; `None` marks a missing observation.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One named annual time series for one country.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnualSeries {
    name: String,
    country: String,
    start_year: i32,
    values: Vec<Option<f64>>,
}

impl AnnualSeries {
    pub fn new(
        name: impl Into<String>,
        country: impl Into<String>,
        start_year: i32,
        values: Vec<Option<f64>>,
    ) -> Result<Self> {
        let name = name.into();
        if values.is_empty() {
            return Err(Error::InsufficientData(format!("series `{name}` is empty")));
        }
        if values.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "series `{name}` contains a non-finite value"
            )));
        }
        Ok(Self {
            name,
            country: country.into(),
            start_year,
            values,
        })
    }

    /// Builds a fully observed series.
    pub fn observed(
        name: impl Into<String>,
        country: impl Into<String>,
        start_year: i32,
        values: &[f64],
    ) -> Result<Self> {
        Self::new(
            name,
            country,
            start_year,
            values.iter().copied().map(Some).collect(),
        )
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn country(&self) -> &str {
        &self.country
    }

    pub fn start_year(&self) -> i32 {
        self.start_year
    }

    pub fn end_year(&self) -> i32 {
        self.start_year + self.values.len() as i32 - 1
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[Option<f64>] {
        &self.values
    }

    pub fn years(&self) -> impl Iterator<Item = i32> + '_ {
        (0..self.values.len()).map(move |i| self.start_year + i as i32)
    }

    pub fn get(&self, year: i32) -> Option<f64> {
        let idx = year.checked_sub(self.start_year)?;
        self.values
            .get(usize::try_from(idx).ok()?)
            .copied()
            .flatten()
    }

    pub fn is_complete(&self) -> bool {
        self.values.iter().all(Option::is_some)
    }

    pub fn observed_count(&self) -> usize {
        self.values.iter().filter(|v| v.is_some()).count()
    }

    /// Dense values, or an error naming the first missing year.
    pub fn dense(&self) -> Result<Vec<f64>> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| {
                v.ok_or_else(|| {
                    Error::InsufficientData(format!(
                        "series `{}` has a missing value in {}",
                        self.name,
                        self.start_year + i as i32
                    ))
                })
            })
            .collect()
    }

    pub fn renamed(&self, name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ..self.clone()
        }
    }

    /// Fills interior gaps by linear interpolation between the nearest
    /// observed neighbours. Observed values are returned unchanged.
    pub fn interpolate_gaps(&self) -> Result<Self> {
        if self.observed_count() < 2 {
            return Err(Error::InsufficientData(format!(
                "series `{}` needs at least two observations to interpolate",
                self.name
            )));
        }
        let first = self.values.first().copied().flatten();
        let last = self.values.last().copied().flatten();
        if first.is_none() || last.is_none() {
            return Err(Error::CannotExtrapolate(format!(
                "series `{}` has leading or trailing missing values",
                self.name
            )));
        }

        let mut out = self.values.clone();
        let mut prev = 0usize;
        for (i, v) in self.values.iter().enumerate().skip(1) {
            if v.is_none() {
                continue;
            }
            if i > prev + 1 {
                let (ya, yb) = (self.values[prev].unwrap(), self.values[i].unwrap());
                let span = (i - prev) as f64;
                for (t, slot) in out.iter_mut().enumerate().take(i).skip(prev + 1) {
                    *slot = Some(ya + (yb - ya) * (t - prev) as f64 / span);
                }
            }
            prev = i;
        }
        Ok(Self {
            values: out,
            ..self.clone()
        })
    }

    /// `out_t = in_{t+1} - in_t`; the result starts one year later and is
    /// named `D(name)`.
    pub fn first_difference(&self) -> Result<Self> {
        if self.values.len() < 2 {
            return Err(Error::InsufficientData(format!(
                "series `{}` needs at least two values to difference",
                self.name
            )));
        }
        let dense = self.dense()?;
        let diffs = dense.windows(2).map(|w| Some(w[1] - w[0])).collect();
        Ok(Self {
            name: format!("D({})", self.name),
            country: self.country.clone(),
            start_year: self.start_year + 1,
            values: diffs,
        })
    }

    /// Drops leading and trailing missing values. Returns `None` when nothing
    /// is observed.
    pub fn trim_missing(&self) -> Option<Self> {
        let first = self.values.iter().position(Option::is_some)?;
        let last = self.values.iter().rposition(Option::is_some)?;
        Some(Self {
            name: self.name.clone(),
            country: self.country.clone(),
            start_year: self.start_year + first as i32,
            values: self.values[first..=last].to_vec(),
        })
    }

    /// Restricts the series to `[from, to]` (inclusive). The window must lie
    /// inside the series.
    pub fn window(&self, from: i32, to: i32) -> Result<Self> {
        if from < self.start_year || to > self.end_year() || from > to {
            return Err(Error::InvalidInput(format!(
                "window {from}-{to} outside `{}` ({}-{})",
                self.name,
                self.start_year,
                self.end_year()
            )));
        }
        let a = (from - self.start_year) as usize;
        let b = (to - self.start_year) as usize;
        Ok(Self {
            name: self.name.clone(),
            country: self.country.clone(),
            start_year: from,
            values: self.values[a..=b].to_vec(),
        })
    }
}

/// Rebuilds levels from first differences: `out_0 = x0`, `out_{t+1} = out_t + d_t`.
pub fn cumulate(diffs: &[f64], x0: f64) -> Vec<f64> {
    let mut out = Vec::with_capacity(diffs.len() + 1);
    out.push(x0);
    let mut acc = x0;
    for d in diffs {
        acc += d;
        out.push(acc);
    }
    out
}

/// Aligned multivariate dataset for one country.
///
/// Variables are stored one contiguous series each. `ordering` is the
/// recursive shock ordering used for Cholesky identification, as indices
/// into `variables`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountryPanel {
    country: String,
    variables: Vec<AnnualSeries>,
    ordering: Vec<usize>,
}

impl CountryPanel {
    pub fn new(
        country: impl Into<String>,
        variables: Vec<AnnualSeries>,
        ordering: Vec<usize>,
    ) -> Result<Self> {
        let country = country.into();
        let first = variables.first().ok_or_else(|| {
            Error::InsufficientData(format!("panel `{country}` has no variables"))
        })?;
        let (start, len) = (first.start_year(), first.len());
        for (i, s) in variables.iter().enumerate() {
            if s.start_year() != start || s.len() != len {
                return Err(Error::InvalidInput(format!(
                    "panel `{country}`: `{}` covers {}-{} but `{}` covers {}-{}",
                    s.name(),
                    s.start_year(),
                    s.end_year(),
                    first.name(),
                    start,
                    first.end_year()
                )));
            }
            if variables[..i].iter().any(|o| o.name() == s.name()) {
                return Err(Error::InvalidInput(format!(
                    "panel `{country}`: duplicate variable `{}`",
                    s.name()
                )));
            }
            if s.name().eq_ignore_ascii_case("hdi") {
                if let Some(v) = s
                    .values()
                    .iter()
                    .flatten()
                    .find(|v| !(0.0..=1.0).contains(*v))
                {
                    return Err(Error::InvalidInput(format!(
                        "panel `{country}`: HDI value {v} outside [0, 1]"
                    )));
                }
            }
        }
        check_permutation(&ordering, variables.len())?;
        Ok(Self {
            country,
            variables,
            ordering,
        })
    }

    /// Panel from a dense `T x K` matrix, columns named by `names`.
    pub fn from_matrix(
        country: impl Into<String>,
        names: &[&str],
        start_year: i32,
        data: &DMatrix<f64>,
    ) -> Result<Self> {
        let country = country.into();
        if names.len() != data.ncols() {
            return Err(Error::InvalidInput(format!(
                "{} names for {} columns",
                names.len(),
                data.ncols()
            )));
        }
        let variables = names
            .iter()
            .enumerate()
            .map(|(j, n)| {
                let col: Vec<f64> = data.column(j).iter().copied().collect();
                AnnualSeries::observed(*n, country.clone(), start_year, &col)
            })
            .collect::<Result<Vec<_>>>()?;
        let k = variables.len();
        Self::new(country, variables, (0..k).collect())
    }

    pub fn country(&self) -> &str {
        &self.country
    }

    pub fn variables(&self) -> &[AnnualSeries] {
        &self.variables
    }

    pub fn ordering(&self) -> &[usize] {
        &self.ordering
    }

    pub fn names(&self) -> Vec<String> {
        self.variables
            .iter()
            .map(|s| s.name().to_string())
            .collect()
    }

    pub fn nvars(&self) -> usize {
        self.variables.len()
    }

    pub fn nobs(&self) -> usize {
        self.variables[0].len()
    }

    pub fn start_year(&self) -> i32 {
        self.variables[0].start_year()
    }

    pub fn end_year(&self) -> i32 {
        self.variables[0].end_year()
    }

    pub fn is_complete(&self) -> bool {
        self.variables.iter().all(AnnualSeries::is_complete)
    }

    pub fn variable(&self, name: &str) -> Option<&AnnualSeries> {
        self.variables.iter().find(|s| s.name() == name)
    }

    /// Replaces the shock ordering, given as variable names.
    pub fn with_ordering<S: AsRef<str>>(mut self, names: &[S]) -> Result<Self> {
        let ordering = names
            .iter()
            .map(|n| {
                self.variables
                    .iter()
                    .position(|s| s.name() == n.as_ref())
                    .ok_or_else(|| {
                        Error::InvalidInput(format!("unknown variable `{}`", n.as_ref()))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        check_permutation(&ordering, self.variables.len())?;
        self.ordering = ordering;
        Ok(self)
    }

    /// Dense `T x K` data matrix in storage order.
    pub fn matrix(&self) -> Result<DMatrix<f64>> {
        let cols = self
            .variables
            .iter()
            .map(AnnualSeries::dense)
            .collect::<Result<Vec<_>>>()?;
        let (t, k) = (self.nobs(), self.nvars());
        Ok(DMatrix::from_fn(t, k, |i, j| cols[j][i]))
    }

    /// First-differences every variable; ordering is kept.
    pub fn difference(&self) -> Result<Self> {
        let variables = self
            .variables
            .iter()
            .map(|s| s.first_difference().map(|d| d.renamed(s.name())))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            country: self.country.clone(),
            variables,
            ordering: self.ordering.clone(),
        })
    }

    /// Restricts every variable to `[from, to]`.
    pub fn window(&self, from: i32, to: i32) -> Result<Self> {
        let variables = self
            .variables
            .iter()
            .map(|s| s.window(from, to))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            country: self.country.clone(),
            variables,
            ordering: self.ordering.clone(),
        })
    }
}

fn check_permutation(ordering: &[usize], k: usize) -> Result<()> {
    let mut seen = vec![false; k];
    if ordering.len() != k {
        return Err(Error::InvalidInput(format!(
            "ordering lists {} variables, panel has {k}",
            ordering.len()
        )));
    }
    for &i in ordering {
        if i >= k || std::mem::replace(&mut seen[i], true) {
            return Err(Error::InvalidInput(format!(
                "ordering {ordering:?} is not a permutation of 0..{k}"
            )));
        }
    }
    Ok(())
}

/// Builds a complete panel from raw series of one country.
///
/// Each series is trimmed of leading/trailing gaps and interpolated; the
/// panel covers the years every series observes. Ordering follows input
/// order.
pub fn align_panel(series: Vec<AnnualSeries>) -> Result<CountryPanel> {
    let country = series
        .first()
        .ok_or_else(|| Error::InsufficientData("no series to align".into()))?
        .country()
        .to_string();
    if let Some(s) = series.iter().find(|s| s.country() != country) {
        return Err(Error::InvalidInput(format!(
            "series `{}` belongs to `{}`, expected `{country}`",
            s.name(),
            s.country()
        )));
    }

    let filled = series
        .iter()
        .map(|s| {
            s.trim_missing()
                .ok_or_else(|| {
                    Error::InsufficientData(format!("series `{}` has no observations", s.name()))
                })?
                .interpolate_gaps()
        })
        .collect::<Result<Vec<_>>>()?;

    let from = filled.iter().map(AnnualSeries::start_year).max().unwrap();
    let to = filled.iter().map(AnnualSeries::end_year).min().unwrap();
    if from > to {
        return Err(Error::EmptyOverlap(format!(
            "series of `{country}` share no common year"
        )));
    }
    let variables = filled
        .iter()
        .map(|s| s.window(from, to))
        .collect::<Result<Vec<_>>>()?;
    let k = variables.len();
    CountryPanel::new(country, variables, (0..k).collect())
}
