//! Markdown, CSV and JSON rendering. Renderers only format numbers already
//! held by the report; nothing is recomputed here.

use std::fmt::Write as _;

use super::config::OutputFormat;
use super::run::{CountryReport, RunReport, Section, NOT_REQUESTED};
use crate::diagnostics::ALL_EXCLUDED;
use crate::error::{Error, Result};
use crate::stationarity::{AdfResult, JohansenResult};

/// A rendered report: one or more named text files, main file first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Document {
    pub files: Vec<(String, String)>,
}

impl Document {
    pub fn main(&self) -> &str {
        &self.files[0].1
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.files
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t.as_str())
    }

    /// All files concatenated, each preceded by its name when there is more
    /// than one.
    pub fn to_single_text(&self) -> String {
        if self.files.len() == 1 {
            return self.files[0].1.clone();
        }
        let mut out = String::new();
        for (name, text) in &self.files {
            let _ = writeln!(out, "# {name}");
            out.push_str(text);
            out.push('\n');
        }
        out
    }

    pub fn write_to(&self, dir: &std::path::Path) -> Result<()> {
        let io = |path: &std::path::Path| {
            let path = path.display().to_string();
            move |source| Error::Io { path, source }
        };
        std::fs::create_dir_all(dir).map_err(io(dir))?;
        for (name, text) in &self.files {
            let path = dir.join(name);
            std::fs::write(&path, text).map_err(io(&path))?;
        }
        Ok(())
    }
}

/// Six significant digits.
pub fn fmt_stat(x: f64) -> String {
    if !x.is_finite() {
        return format!("{x}");
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-4..=9).contains(&mag) {
        return format!("{x:.5e}");
    }
    let decimals = (5 - mag).max(0) as usize;
    format!("{x:.decimals$}")
}

/// Four decimals.
pub fn fmt_p(p: f64) -> String {
    format!("{p:.4}")
}

pub fn render_report(report: &RunReport, format: OutputFormat) -> Document {
    match format {
        OutputFormat::Markdown => {
            let mut files = vec![("report.md".to_string(), markdown(report))];
            files.extend(plot_series(report));
            Document { files }
        }
        OutputFormat::Csv => Document {
            files: csv_tables(report),
        },
        OutputFormat::Json => Document {
            files: vec![(
                "report.json".into(),
                serde_json::to_string_pretty(report).expect("report serialises"),
            )],
        },
    }
}

pub fn parse_json_report(text: &str) -> Result<crate::pipeline::RunReport> {
    serde_json::from_str(text).map_err(|e| Error::Malformed(e.to_string()))
}

// ---------------------------------------------------------------- markdown

fn table(out: &mut String, header: &[&str], rows: &[Vec<String>]) {
    let _ = writeln!(out, "| {} |", header.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(header.len()));
    for r in rows {
        let _ = writeln!(out, "| {} |", r.join(" | "));
    }
    out.push('\n');
}

fn section<T>(out: &mut String, title: &str, s: &Section<T>, body: impl FnOnce(&mut String, &T)) {
    if s.skip_reason() == Some(NOT_REQUESTED) {
        return;
    }
    let _ = writeln!(out, "### {title}\n");
    match s {
        Section::Done { result } => body(out, result),
        Section::Skipped { reason } => {
            let _ = writeln!(out, "_Skipped: {reason}_\n");
        }
    }
}

fn adf_rows(results: &[AdfResult]) -> Vec<Vec<String>> {
    results
        .iter()
        .map(|r| {
            vec![
                r.variable.clone(),
                fmt_stat(r.statistic),
                fmt_p(r.p_value),
                fmt_stat(r.critical_values.one),
                fmt_stat(r.critical_values.five),
                fmt_stat(r.critical_values.ten),
                r.lags_used.to_string(),
                r.interpretation().to_string(),
            ]
        })
        .collect()
}

const ADF_HEADER: [&str; 8] = [
    "Variable",
    "ADF statistic",
    "p-value",
    "1% CV",
    "5% CV",
    "10% CV",
    "Lags",
    "Interpretation",
];

fn markdown(report: &RunReport) -> String {
    let mut out = String::new();
    let p = &report.provenance;
    let _ = writeln!(out, "# VAR analysis report\n");
    let _ = writeln!(out, "Generated by {} {}.\n", p.tool, p.version);
    let _ = writeln!(out, "Inputs:\n");
    for i in &p.inputs {
        let _ = writeln!(out, "- {i}");
    }
    let _ = writeln!(
        out,
        "\nConfiguration:\n\n```toml\n{}```\n",
        toml::to_string(&p.config).unwrap_or_default()
    );
    for c in &report.countries {
        country_markdown(&mut out, c);
    }
    out
}

fn country_markdown(out: &mut String, c: &CountryReport) {
    let _ = writeln!(out, "## {}\n", c.country);
    section(out, "Data", &c.data, |out, d| {
        let filled: Vec<String> = d
            .interpolated
            .iter()
            .map(|(v, n)| format!("{v}: {n}"))
            .collect();
        let _ = writeln!(
            out,
            "{}-{}, {} observations. Interpolated cells: {}.\n",
            d.first_year,
            d.last_year,
            d.n_obs,
            filled.join(", ")
        );
    });
    section(out, "Unit root tests, levels", &c.adf_levels, |out, r| {
        table(out, &ADF_HEADER, &adf_rows(r))
    });
    section(
        out,
        "Unit root tests, first differences",
        &c.adf_differences,
        |out, r| table(out, &ADF_HEADER, &adf_rows(r)),
    );
    section(out, "Johansen cointegration test", &c.johansen, |out, j| {
        johansen_markdown(out, &j.result);
        if let Some(cav) = &j.caveat {
            let _ = writeln!(out, "> Caveat: {cav}\n");
        }
    });
    section(out, "Lag order selection", &c.lag_selection, |out, s| {
        let star = |v: String, hit: bool| if hit { format!("{v}*") } else { v };
        let rows = s
            .rows
            .iter()
            .map(|r| {
                vec![
                    r.lag.to_string(),
                    fmt_stat(r.log_l),
                    r.lr.map_or("NA".into(), |x| star(fmt_stat(x), s.starred.lr == r.lag)),
                    star(fmt_stat(r.fpe), s.starred.fpe == r.lag),
                    star(fmt_stat(r.aic), s.starred.aic == r.lag),
                    star(fmt_stat(r.sc), s.starred.sc == r.lag),
                    star(fmt_stat(r.hq), s.starred.hq == r.lag),
                ]
            })
            .collect::<Vec<_>>();
        table(out, &["Lag", "LogL", "LR", "FPE", "AIC", "SC", "HQ"], &rows);
        let _ = writeln!(
            out,
            "\\* lag chosen by the criterion; {} common observations.\n",
            s.n_obs
        );
    });
    section(out, "VAR estimates", &c.var, |out, v| {
        let e = &v.estimate;
        let _ = writeln!(out, "{}.\n", v.header);
        let mut header = vec!["Regressor"];
        header.extend(e.variables.iter().map(String::as_str));
        let rows = (0..e.per_equation[0].coef_table.len())
            .map(|r| {
                let mut row = vec![e.per_equation[0].coef_table[r].name.clone()];
                row.extend(e.per_equation.iter().map(|eq| {
                    let c = &eq.coef_table[r];
                    format!(
                        "{} ({}) [{}]",
                        fmt_stat(c.coefficient),
                        fmt_stat(c.std_error),
                        fmt_stat(c.t_stat)
                    )
                }));
                row
            })
            .collect::<Vec<_>>();
        table(out, &header, &rows);
        let _ = writeln!(out, "Cells: coefficient (standard error) [t-statistic].\n");
        let stats: [(&str, fn(&crate::var::EquationStats) -> f64); 6] = [
            ("R-squared", |q| q.r_squared),
            ("Adj. R-squared", |q| q.adj_r_squared),
            ("Sum sq. resids", |q| q.ssr),
            ("S.E. equation", |q| q.se_equation),
            ("F-statistic", |q| q.f_stat),
            ("Log likelihood", |q| q.log_likelihood),
        ];
        let rows = stats
            .iter()
            .map(|(name, f)| {
                let mut row = vec![name.to_string()];
                row.extend(e.per_equation.iter().map(|q| fmt_stat(f(q))));
                row
            })
            .collect::<Vec<_>>();
        let mut header = vec!["Statistic"];
        header.extend(e.variables.iter().map(String::as_str));
        table(out, &header, &rows);
        if let Some(ll) = e.log_likelihood {
            let _ = writeln!(out, "System log likelihood: {}.\n", fmt_stat(ll));
        }
    });
    section(
        out,
        "Granger causality / block exogeneity Wald tests",
        &c.granger,
        |out, g| {
            let rows = g
                .iter()
                .map(|w| {
                    vec![
                        w.dependent.clone(),
                        w.excluded.clone(),
                        fmt_stat(w.chi_sq),
                        w.df.to_string(),
                        fmt_p(w.p_value),
                    ]
                })
                .collect::<Vec<_>>();
            table(
                out,
                &["Dependent", "Excluded", "Chi-sq", "df", "Prob."],
                &rows,
            );
            let _ = writeln!(
                out,
                "`{ALL_EXCLUDED}` tests every other variable jointly.\n"
            );
        },
    );
    section(
        out,
        "Roots of the characteristic polynomial",
        &c.stability,
        |out, s| {
            let rows = s
                .roots
                .iter()
                .map(|r| {
                    let root = if r.im == 0.0 {
                        fmt_stat(r.re)
                    } else {
                        format!(
                            "{} {} {}i",
                            fmt_stat(r.re),
                            if r.im < 0.0 { "-" } else { "+" },
                            fmt_stat(r.im.abs())
                        )
                    };
                    vec![root, fmt_stat(r.modulus)]
                })
                .collect::<Vec<_>>();
            table(out, &["Root", "Modulus"], &rows);
            let verdict = if s.stable {
                "No root lies outside the unit circle; the VAR satisfies the stability condition."
            } else {
                "At least one root lies on or outside the unit circle; the VAR is not stable."
            };
            let _ = writeln!(out, "{verdict}\n");
        },
    );
    section(
        out,
        "Residual cross-correlations",
        &c.cross_correlations,
        |out, x| {
            let k = x.variables.len();
            let names: Vec<String> = (0..k)
                .flat_map(|i| (0..k).map(move |j| (i, j)))
                .map(|(i, j)| format!("{},{}(-i)", x.variables[i], x.variables[j]))
                .collect();
            let mut header = vec!["Lag"];
            header.extend(names.iter().map(String::as_str));
            let rows = x
                .by_lag
                .iter()
                .enumerate()
                .map(|(l, m)| {
                    let mut row = vec![l.to_string()];
                    row.extend(
                        (0..k)
                            .flat_map(|i| (0..k).map(move |j| (i, j)))
                            .map(|(i, j)| format!("{:.3}", m[(i, j)])),
                    );
                    row
                })
                .collect::<Vec<_>>();
            table(out, &header, &rows);
            let _ = writeln!(
                out,
                "Approximate two-standard-error band for lag > 0: ±{}.\n",
                fmt_stat(x.band)
            );
        },
    );
    section(
        out,
        "Residual serial correlation LM tests",
        &c.lm,
        |out, lm| {
            for (title, rows) in [("At lag h", &lm.at_lag), ("Lags 1 to h", &lm.cumulative)] {
                let _ = writeln!(out, "{title}:\n");
                let rows = rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.lag.to_string(),
                            fmt_stat(r.lre_stat),
                            r.df.to_string(),
                            fmt_p(r.p_lre),
                            fmt_stat(r.rao_f),
                            format!("({}, {:.1})", r.df_num, r.df_denom),
                            fmt_p(r.p_rao),
                        ]
                    })
                    .collect::<Vec<_>>();
                table(
                    out,
                    &[
                        "Lag",
                        "LRE* stat",
                        "df",
                        "Prob.",
                        "Rao F-stat",
                        "df",
                        "Prob.",
                    ],
                    &rows,
                );
            }
        },
    );
    section(out, "Impulse responses", &c.structural, |out, s| {
        let irf = &s.set.irf;
        let _ = writeln!(
            out,
            "Cholesky ordering: {}. One-standard-deviation shocks.\n",
            s.ordering.join(", ")
        );
        if let Some(w) = &irf.warning {
            let _ = writeln!(out, "> Warning: {w}\n");
        }
        for (j, shock) in irf.variables.iter().enumerate() {
            let _ = writeln!(out, "Shock to {shock}:\n");
            let mut header = vec!["Period"];
            header.extend(irf.variables.iter().map(String::as_str));
            let rows = irf
                .irf
                .iter()
                .enumerate()
                .map(|(h, m)| {
                    let mut row = vec![(h + 1).to_string()];
                    row.extend((0..irf.variables.len()).map(|i| fmt_stat(m[(i, j)])));
                    row
                })
                .collect::<Vec<_>>();
            table(out, &header, &rows);
        }
        if let Some(b) = &s.bands {
            let _ = writeln!(
                out,
                "{:.0}% bands ({}, {} draws, seed {}) are in irf.csv.\n",
                100.0 * b.coverage,
                b.method,
                b.draws,
                b.seed
            );
        }
    });
    section(out, "Variance decomposition", &c.structural, |out, s| {
        for t in &s.set.fevd.tables {
            let _ = writeln!(out, "Variance decomposition of {}:\n", t.variable);
            let mut header = vec!["Period", "S.E."];
            header.extend(s.set.fevd.variables.iter().map(String::as_str));
            let rows = t
                .rows
                .iter()
                .map(|r| {
                    let mut row = vec![r.period.to_string(), fmt_stat(r.se)];
                    row.extend(r.shares.iter().map(|x| fmt_stat(*x)));
                    row
                })
                .collect::<Vec<_>>();
            table(out, &header, &rows);
        }
    });
    section(out, "Historical decomposition", &c.structural, |out, s| {
        let h = &s.set.historical;
        let _ = writeln!(
            out,
            "{} observations ({}-{}); full series in historical.csv. Largest relative additivity error: {:.1e}.\n",
            h.years.len(),
            h.years.first().copied().unwrap_or_default(),
            h.years.last().copied().unwrap_or_default(),
            h.max_identity_error()
        );
    });
    section(
        out,
        "Hold-out forecast evaluation (non-normative)",
        &c.forecast,
        |out, f| {
            let rows = f
                .variables
                .iter()
                .enumerate()
                .map(|(i, v)| vec![v.clone(), fmt_stat(f.rmse[i]), fmt_stat(f.mae[i])])
                .collect::<Vec<_>>();
            let _ = writeln!(
                out,
                "Last {} observations, VAR({}) re-estimated without them.\n",
                f.holdout, f.lag_order
            );
            table(out, &["Variable", "RMSE", "MAE"], &rows);
        },
    );
}

fn johansen_markdown(out: &mut String, j: &JohansenResult) {
    let rows = (0..j.eigenvalues.len())
        .map(|r| {
            vec![
                JohansenResult::hypothesis_label(r),
                fmt_stat(j.eigenvalues[r]),
                fmt_stat(j.trace_stats[r]),
                fmt_stat(j.max_eigen_stats[r]),
                fmt_stat(j.trace_cv_5pct[r]),
                fmt_stat(j.max_eigen_cv_5pct[r]),
                fmt_p(j.p_values_trace[r]),
                fmt_p(j.p_values_max[r]),
                j.interpretation(r).to_string(),
            ]
        })
        .collect::<Vec<_>>();
    table(
        out,
        &[
            "Hypothesized no. of CE(s)",
            "Eigenvalue",
            "Trace statistic",
            "Max-eigen statistic",
            "Trace 5% CV",
            "Max-eigen 5% CV",
            "Trace prob.",
            "Max-eigen prob.",
            "Conclusion",
        ],
        &rows,
    );
    let _ = writeln!(
        out,
        "Run on {} with {} lagged difference(s), {} observations. Rank by the trace test: {}. Probabilities are approximate.\n",
        match j.input {
            crate::stationarity::JohansenInput::Levels => "levels",
            crate::stationarity::JohansenInput::Differences => "first differences",
        },
        j.lags_in_differences,
        j.n_obs,
        j.rank_decision
    );
}

// --------------------------------------------------------------------- csv

fn csv_text(header: &[String], rows: &[Vec<String>]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
}

fn hdr(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|s| s.to_string()).collect()
}

fn plot_series(report: &RunReport) -> Vec<(String, String)> {
    let shocks = report
        .countries
        .iter()
        .find_map(|c| c.structural.result().map(|s| s.set.irf.variables.clone()))
        .unwrap_or_default();

    let mut irf = Vec::new();
    let mut fevd = Vec::new();
    let mut hist = Vec::new();
    for c in &report.countries {
        let Some(s) = c.structural.result() else {
            continue;
        };
        let v = &s.set.irf.variables;
        for (h, m) in s.set.irf.irf.iter().enumerate() {
            for (j, shock) in v.iter().enumerate() {
                for (i, resp) in v.iter().enumerate() {
                    let (lo, hi) = s
                        .bands
                        .as_ref()
                        .map_or((String::new(), String::new()), |b| {
                            (fmt_stat(b.lower[h][(i, j)]), fmt_stat(b.upper[h][(i, j)]))
                        });
                    irf.push(vec![
                        c.country.clone(),
                        shock.clone(),
                        resp.clone(),
                        h.to_string(),
                        fmt_stat(m[(i, j)]),
                        lo,
                        hi,
                    ]);
                }
            }
        }
        for t in &s.set.fevd.tables {
            for r in &t.rows {
                let mut row = vec![
                    c.country.clone(),
                    t.variable.clone(),
                    r.period.to_string(),
                    fmt_stat(r.se),
                ];
                row.extend(r.shares.iter().map(|x| fmt_stat(*x)));
                fevd.push(row);
            }
        }
        let h = &s.set.historical;
        for p in &h.paths {
            for (t, year) in h.years.iter().enumerate() {
                let mut row = vec![
                    c.country.clone(),
                    p.variable.clone(),
                    year.to_string(),
                    fmt_stat(p.actual[t]),
                    fmt_stat(p.baseline[t]),
                ];
                row.extend(p.contributions.iter().map(|k| fmt_stat(k[t])));
                hist.push(row);
            }
        }
    }
    let mut fevd_h = hdr(&["country", "variable", "period", "se"]);
    fevd_h.extend(shocks.iter().map(|s| format!("share_{s}")));
    let mut hist_h = hdr(&["country", "variable", "year", "actual", "baseline"]);
    hist_h.extend(shocks.iter().map(|s| format!("contrib_{s}")));
    vec![
        (
            "irf.csv".into(),
            csv_text(
                &hdr(&[
                    "country", "shock", "response", "horizon", "value", "lower", "upper",
                ]),
                &irf,
            ),
        ),
        ("fevd.csv".into(), csv_text(&fevd_h, &fevd)),
        ("historical.csv".into(), csv_text(&hist_h, &hist)),
    ]
}

fn csv_tables(report: &RunReport) -> Vec<(String, String)> {
    let mut adf = Vec::new();
    let mut joh = Vec::new();
    let mut lags = Vec::new();
    let mut coefs = Vec::new();
    let mut eqs = Vec::new();
    let mut granger = Vec::new();
    let mut roots = Vec::new();
    let mut xcorr = Vec::new();
    let mut lm = Vec::new();
    let mut fc = Vec::new();
    let mut skipped = Vec::new();

    for c in &report.countries {
        let cn = || c.country.clone();
        let mut skip = |name: &str, reason: Option<&str>| {
            if let Some(r) = reason.filter(|r| *r != NOT_REQUESTED) {
                skipped.push(vec![cn(), name.to_string(), r.to_string()]);
            }
        };
        skip("data", c.data.skip_reason());
        skip("adf_levels", c.adf_levels.skip_reason());
        skip("adf_differences", c.adf_differences.skip_reason());
        skip("johansen", c.johansen.skip_reason());
        skip("lag_selection", c.lag_selection.skip_reason());
        skip("var", c.var.skip_reason());
        skip("granger", c.granger.skip_reason());
        skip("stability", c.stability.skip_reason());
        skip("cross_correlations", c.cross_correlations.skip_reason());
        skip("lm", c.lm.skip_reason());
        skip("structural", c.structural.skip_reason());
        skip("forecast", c.forecast.skip_reason());

        for (label, s) in [
            ("levels", &c.adf_levels),
            ("differences", &c.adf_differences),
        ] {
            for r in s.result().into_iter().flatten() {
                adf.push(vec![
                    cn(),
                    label.into(),
                    r.variable.clone(),
                    fmt_stat(r.statistic),
                    fmt_p(r.p_value),
                    fmt_stat(r.critical_values.one),
                    fmt_stat(r.critical_values.five),
                    fmt_stat(r.critical_values.ten),
                    r.lags_used.to_string(),
                    r.n_obs.to_string(),
                    r.interpretation().into(),
                ]);
            }
        }
        if let Some(j) = c.johansen.result() {
            let r = &j.result;
            for h in 0..r.eigenvalues.len() {
                joh.push(vec![
                    cn(),
                    JohansenResult::hypothesis_label(h),
                    fmt_stat(r.eigenvalues[h]),
                    fmt_stat(r.trace_stats[h]),
                    fmt_stat(r.max_eigen_stats[h]),
                    fmt_stat(r.trace_cv_5pct[h]),
                    fmt_stat(r.max_eigen_cv_5pct[h]),
                    fmt_p(r.p_values_trace[h]),
                    fmt_p(r.p_values_max[h]),
                    r.interpretation(h).into(),
                ]);
            }
        }
        if let Some(s) = c.lag_selection.result() {
            for r in &s.rows {
                let mut selected = Vec::new();
                for (name, l) in [
                    ("LR", s.starred.lr),
                    ("FPE", s.starred.fpe),
                    ("AIC", s.starred.aic),
                    ("SC", s.starred.sc),
                    ("HQ", s.starred.hq),
                ] {
                    if l == r.lag {
                        selected.push(name);
                    }
                }
                lags.push(vec![
                    cn(),
                    r.lag.to_string(),
                    fmt_stat(r.log_l),
                    r.lr.map(fmt_stat).unwrap_or_default(),
                    fmt_stat(r.fpe),
                    fmt_stat(r.aic),
                    fmt_stat(r.sc),
                    fmt_stat(r.hq),
                    selected.join(" "),
                ]);
            }
        }
        if let Some(v) = c.var.result() {
            for eq in &v.estimate.per_equation {
                for r in &eq.coef_table {
                    coefs.push(vec![
                        cn(),
                        eq.dependent.clone(),
                        r.name.clone(),
                        fmt_stat(r.coefficient),
                        fmt_stat(r.std_error),
                        fmt_stat(r.t_stat),
                    ]);
                }
                eqs.push(vec![
                    cn(),
                    eq.dependent.clone(),
                    v.lag_order.to_string(),
                    fmt_stat(eq.r_squared),
                    fmt_stat(eq.adj_r_squared),
                    fmt_stat(eq.ssr),
                    fmt_stat(eq.se_equation),
                    fmt_stat(eq.f_stat),
                    fmt_stat(eq.log_likelihood),
                ]);
            }
        }
        for w in c.granger.result().into_iter().flatten() {
            granger.push(vec![
                cn(),
                w.dependent.clone(),
                w.excluded.clone(),
                fmt_stat(w.chi_sq),
                w.df.to_string(),
                fmt_p(w.p_value),
            ]);
        }
        if let Some(s) = c.stability.result() {
            for r in &s.roots {
                roots.push(vec![
                    cn(),
                    fmt_stat(r.re),
                    fmt_stat(r.im),
                    fmt_stat(r.modulus),
                ]);
            }
        }
        if let Some(x) = c.cross_correlations.result() {
            for (l, m) in x.by_lag.iter().enumerate() {
                for (i, vi) in x.variables.iter().enumerate() {
                    for (j, vj) in x.variables.iter().enumerate() {
                        xcorr.push(vec![
                            cn(),
                            l.to_string(),
                            vi.clone(),
                            vj.clone(),
                            fmt_stat(m[(i, j)]),
                        ]);
                    }
                }
            }
        }
        if let Some(r) = c.lm.result() {
            for (kind, rows) in [("at_lag", &r.at_lag), ("cumulative", &r.cumulative)] {
                for row in rows.iter() {
                    lm.push(vec![
                        cn(),
                        kind.into(),
                        row.lag.to_string(),
                        fmt_stat(row.lre_stat),
                        row.df.to_string(),
                        fmt_p(row.p_lre),
                        fmt_stat(row.rao_f),
                        row.df_num.to_string(),
                        fmt_stat(row.df_denom),
                        fmt_p(row.p_rao),
                    ]);
                }
            }
        }
        if let Some(f) = c.forecast.result() {
            for (i, v) in f.variables.iter().enumerate() {
                fc.push(vec![
                    cn(),
                    v.clone(),
                    f.holdout.to_string(),
                    fmt_stat(f.rmse[i]),
                    fmt_stat(f.mae[i]),
                ]);
            }
        }
    }

    let mut files = vec![
        (
            "adf.csv".to_string(),
            csv_text(
                &hdr(&[
                    "country",
                    "transform",
                    "variable",
                    "statistic",
                    "p_value",
                    "cv_1pct",
                    "cv_5pct",
                    "cv_10pct",
                    "lags",
                    "n_obs",
                    "interpretation",
                ]),
                &adf,
            ),
        ),
        (
            "johansen.csv".into(),
            csv_text(
                &hdr(&[
                    "country",
                    "hypothesis",
                    "eigenvalue",
                    "trace_stat",
                    "max_eigen_stat",
                    "trace_cv_5pct",
                    "max_eigen_cv_5pct",
                    "trace_p",
                    "max_eigen_p",
                    "conclusion",
                ]),
                &joh,
            ),
        ),
        (
            "lag_selection.csv".into(),
            csv_text(
                &hdr(&[
                    "country",
                    "lag",
                    "log_l",
                    "lr",
                    "fpe",
                    "aic",
                    "sc",
                    "hq",
                    "selected_by",
                ]),
                &lags,
            ),
        ),
        (
            "var_coefficients.csv".into(),
            csv_text(
                &hdr(&[
                    "country",
                    "equation",
                    "regressor",
                    "coefficient",
                    "std_error",
                    "t_stat",
                ]),
                &coefs,
            ),
        ),
        (
            "var_equations.csv".into(),
            csv_text(
                &hdr(&[
                    "country",
                    "equation",
                    "lag_order",
                    "r_squared",
                    "adj_r_squared",
                    "ssr",
                    "se_equation",
                    "f_stat",
                    "log_likelihood",
                ]),
                &eqs,
            ),
        ),
        (
            "granger.csv".into(),
            csv_text(
                &hdr(&[
                    "country",
                    "dependent",
                    "excluded",
                    "chi_sq",
                    "df",
                    "p_value",
                ]),
                &granger,
            ),
        ),
        (
            "stability.csv".into(),
            csv_text(&hdr(&["country", "re", "im", "modulus"]), &roots),
        ),
        (
            "cross_correlations.csv".into(),
            csv_text(
                &hdr(&[
                    "country",
                    "lag",
                    "variable",
                    "lagged_variable",
                    "correlation",
                ]),
                &xcorr,
            ),
        ),
        (
            "lm.csv".into(),
            csv_text(
                &hdr(&[
                    "country", "kind", "lag", "lre_stat", "df", "p_lre", "rao_f", "df_num",
                    "df_denom", "p_rao",
                ]),
                &lm,
            ),
        ),
    ];
    files.extend(plot_series(report));
    files.push((
        "forecast.csv".into(),
        csv_text(
            &hdr(&["country", "variable", "holdout", "rmse", "mae"]),
            &fc,
        ),
    ));
    files.push((
        "skipped.csv".into(),
        csv_text(&hdr(&["country", "section", "reason"]), &skipped),
    ));
    files
}
