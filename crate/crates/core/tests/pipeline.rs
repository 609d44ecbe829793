mod common;

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use macrovar::fixtures::{synthetic_csv, FIXTURE_START_YEAR, FIXTURE_YEARS, SYNTHETIC_COUNTRIES};
use macrovar::pipeline::{
    country_seed, fetch_indicators, parse_country_csv, parse_json_report, read_country_csv,
    render_report, run_pipeline_with, worldbank_url, CachedFetcher, DataSource, HttpGet, LagChoice,
    OutputFormat, PipelineConfig, Transform,
};
use macrovar::Error;

/// Fails the test if the network is touched.
struct NoNetwork;

impl HttpGet for NoNetwork {
    fn get(&self, url: &str) -> Result<String, String> {
        panic!("network access in an offline test: {url}")
    }
}

/// Serves canned World Bank responses and counts requests.
#[derive(Default)]
struct FakeWorldBank {
    calls: AtomicUsize,
    urls: Mutex<Vec<String>>,
}

impl HttpGet for FakeWorldBank {
    fn get(&self, url: &str) -> Result<String, String> {
        self.calls.fetch_add(1, Ordering::SeqCst);
        self.urls.lock().unwrap().push(url.to_string());
        let base = if url.contains("SH.XPD") { 2.0 } else { 1.5 };
        let rows: Vec<String> = (2000..=2020)
            .map(|y| {
                let v = base + 0.05 * f64::from(y - 2000) + 0.1 * f64::from((y * 7) % 5);
                if y == 2010 {
                    format!(r#"{{"date":"{y}","value":null}}"#)
                } else {
                    format!(r#"{{"date":"{y}","value":{v}}}"#)
                }
            })
            .collect();
        Ok(format!(r#"[{{"page":1}},[{}]]"#, rows.join(",")))
    }
}

struct AlwaysDown(AtomicUsize);

impl HttpGet for AlwaysDown {
    fn get(&self, _url: &str) -> Result<String, String> {
        self.0.fetch_add(1, Ordering::SeqCst);
        Err("connection refused".into())
    }
}

fn worldbank_config(dir: &std::path::Path) -> PipelineConfig {
    let hdi: String = std::iter::once("country,year,hdi".to_string())
        .chain((2000..=2020).map(|y| format!("BGD,{y},{:.3}", 0.45 + 0.01 * f64::from(y - 2000))))
        .collect::<Vec<_>>()
        .join("\n");
    std::fs::write(dir.join("hdi.csv"), hdi).unwrap();
    PipelineConfig {
        countries: vec!["bangladesh".into()],
        data_source: DataSource::WorldbankFetch,
        hdi_csv: Some(dir.join("hdi.csv")),
        cache_dir: dir.join("cache"),
        start_year: 2000,
        end_year: 2020,
        ..PipelineConfig::default()
    }
}

#[test]
fn bundled_fixtures_load_as_complete_three_variable_panels() {
    for spec in &SYNTHETIC_COUNTRIES {
        let path = common::fixture_dir().join(format!("{}.csv", spec.name));
        let on_disk = std::fs::read_to_string(&path).unwrap();
        assert_eq!(
            on_disk,
            synthetic_csv(spec).unwrap(),
            "{} is stale",
            path.display()
        );
        let panel = read_country_csv(&path, spec.name).unwrap();
        assert_eq!(panel.nvars(), 3);
        assert_eq!(panel.nobs(), FIXTURE_YEARS);
        assert_eq!(panel.start_year(), FIXTURE_START_YEAR);
        assert_eq!(
            panel
                .variables()
                .iter()
                .filter(|s| !s.is_complete())
                .count()
                > 0,
            !spec.blanks.is_empty()
        );
    }
}

#[test]
fn csv_without_hdi_column_is_rejected_by_name() {
    let err = parse_country_csv(
        "year,gov_exp_health,gov_exp_edu\n2000,1.0,2.0\n2001,1.1,2.1\n",
        "x",
    )
    .unwrap_err();
    assert_eq!(err.to_string(), "missing column: hdi");
    assert_eq!(err.exit_code(), 2);
}

#[test]
fn cached_fetch_replays_offline_without_network() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = worldbank_config(dir.path());
    let http = FakeWorldBank::default();
    let online = fetch_indicators("bangladesh", &cfg, &http).unwrap();
    assert_eq!(http.calls.load(Ordering::SeqCst), 2);
    let urls = http.urls.lock().unwrap().clone();
    assert_eq!(
        urls[0],
        worldbank_url("BGD", &cfg.health_indicator, 2000, 2020)
    );

    let offline_cfg = PipelineConfig {
        offline: true,
        ..cfg.clone()
    };
    let replay = fetch_indicators("bangladesh", &offline_cfg, &NoNetwork).unwrap();
    assert_eq!(format!("{online:?}"), format!("{replay:?}"));
    assert_eq!(online.variables()[1].get(2010), None);

    // cache hits bypass the client even when online
    let again = fetch_indicators("bangladesh", &cfg, &NoNetwork).unwrap();
    assert_eq!(format!("{online:?}"), format!("{again:?}"));
}

#[test]
fn offline_miss_is_an_error_and_never_calls_the_client() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = PipelineConfig {
        offline: true,
        ..worldbank_config(dir.path())
    };
    let err = fetch_indicators("bangladesh", &cfg, &NoNetwork).unwrap_err();
    assert!(matches!(err, Error::Offline(_)), "{err}");
}

#[test]
fn http_failures_report_the_retry_count() {
    let dir = tempfile::tempdir().unwrap();
    let http = AlwaysDown(AtomicUsize::new(0));
    let fetcher = CachedFetcher {
        http: &http,
        cache_dir: dir.path().to_path_buf(),
        offline: false,
        retries: 3,
    };
    let err = fetcher.get("https://example.invalid/x").unwrap_err();
    match &err {
        Error::Http { attempts, .. } => assert_eq!(*attempts, 3),
        e => panic!("unexpected {e}"),
    }
    assert_eq!(http.0.load(Ordering::SeqCst), 3);
    assert!(err.to_string().contains("after 3 attempt(s)"));
    assert!(!fetcher.cache_path("https://example.invalid/x").exists());
}

#[test]
fn json_report_round_trips() {
    let report = run_pipeline_with(&common::fixture_config(), &NoNetwork).unwrap();
    let doc = render_report(&report, OutputFormat::Json);
    let back = parse_json_report(doc.main()).unwrap();
    assert_eq!(back, report);
}

#[test]
fn fevd_csv_schema_is_fixed() {
    let report = run_pipeline_with(&common::fixture_config(), &NoNetwork).unwrap();
    let doc = render_report(&report, OutputFormat::Csv);
    let fevd = doc.get("fevd.csv").unwrap();
    let golden = include_str!("golden/fevd_header.csv");
    assert_eq!(fevd.lines().next().unwrap(), golden.trim_end());
    assert_eq!(fevd.lines().count(), 1 + 3 * 3 * 10);
    let irf = doc.get("irf.csv").unwrap();
    assert_eq!(
        irf.lines().next().unwrap(),
        "country,shock,response,horizon,value,lower,upper"
    );
    let hist = doc.get("historical.csv").unwrap();
    assert_eq!(
        hist.lines().next().unwrap(),
        "country,variable,year,actual,baseline,contrib_hdi,contrib_gov_exp_health,contrib_gov_exp_edu"
    );
}

fn render_all(cfg: &PipelineConfig, threads: usize) -> Vec<String> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap();
    pool.install(|| {
        let report = run_pipeline_with(cfg, &NoNetwork).unwrap();
        [
            OutputFormat::Markdown,
            OutputFormat::Csv,
            OutputFormat::Json,
        ]
        .into_iter()
        .map(|f| render_report(&report, f).to_single_text())
        .collect()
    })
}

#[test]
fn reports_are_byte_identical_across_runs_and_thread_counts() {
    let cfg = common::fixture_config();
    let one = render_all(&cfg, 1);
    assert_eq!(one, render_all(&cfg, 1));
    assert_eq!(one, render_all(&cfg, 4));
    let other = PipelineConfig {
        seed: cfg.seed + 1,
        ..cfg
    };
    assert_ne!(one[2], render_all(&other, 4)[2]);
}

#[test]
fn country_seeds_do_not_depend_on_list_order() {
    let a = run_pipeline_with(&common::fixture_config(), &NoNetwork).unwrap();
    let mut cfg = common::fixture_config();
    cfg.countries.reverse();
    let b = run_pipeline_with(&cfg, &NoNetwork).unwrap();
    for c in &a.countries {
        let d = b.countries.iter().find(|d| d.country == c.country).unwrap();
        assert_eq!(c, d);
        assert_eq!(c.seed, country_seed(a.provenance.config.seed, &c.country));
    }
}

#[test]
fn auto_lag_header_names_the_lag_and_criteria() {
    let cfg = PipelineConfig {
        countries: vec!["bangladesh".into()],
        lag_order: LagChoice::Auto,
        ..common::fixture_config()
    };
    let report = run_pipeline_with(&cfg, &NoNetwork).unwrap();
    let c = &report.countries[0];
    let var = c.var.result().unwrap();
    let (lag, by) = c.lag_selection.result().unwrap().consensus();
    assert_eq!(var.lag_order, lag.max(1));
    assert!(var.header.starts_with(&format!(
        "VAR({}) in levels; lag selected by ",
        var.lag_order
    )));
    for name in &by {
        assert!(var.header.contains(name));
    }
    let md = render_report(&report, OutputFormat::Markdown);
    assert!(md.main().contains(&var.header));

    let fixed = PipelineConfig {
        lag_order: LagChoice::Fixed(2),
        ..cfg
    };
    let report = run_pipeline_with(&fixed, &NoNetwork).unwrap();
    assert_eq!(
        report.countries[0].var.result().unwrap().header,
        "VAR(2) in levels; lag fixed by configuration"
    );
}

#[test]
fn differences_estimation_carries_the_johansen_caveat() {
    let cfg = PipelineConfig {
        countries: vec!["india".into()],
        estimate_on: Transform::Differences,
        ..common::fixture_config()
    };
    let report = run_pipeline_with(&cfg, &NoNetwork).unwrap();
    let c = &report.countries[0];
    assert!(c
        .adf_differences
        .result()
        .unwrap()
        .iter()
        .all(|r| r.stationary()));
    let caveat = c.johansen.result().unwrap().caveat.clone().unwrap();
    assert!(caveat.contains("first differences"));
    assert!(render_report(&report, OutputFormat::Markdown)
        .main()
        .contains(&caveat));
    assert!(c
        .var
        .result()
        .unwrap()
        .header
        .contains("in first differences"));

    let levels = run_pipeline_with(&common::fixture_config(), &NoNetwork).unwrap();
    assert!(levels
        .countries
        .iter()
        .all(|c| c.johansen.result().unwrap().caveat.is_none()));
}

#[test]
fn keep_going_turns_stage_failures_into_skip_markers() {
    let broken = PipelineConfig {
        countries: vec!["pakistan".into()],
        max_lag_search: 12,
        lag_order: LagChoice::Fixed(2),
        ..common::fixture_config()
    };
    let err = run_pipeline_with(&broken, &NoNetwork).unwrap_err();
    assert!(
        err.to_string()
            .contains("stage `lag selection` failed for pakistan"),
        "{err}"
    );
    assert_eq!(err.exit_code(), 2);

    let partial = PipelineConfig {
        keep_going: true,
        ..broken
    };
    let report = run_pipeline_with(&partial, &NoNetwork).unwrap();
    let c = &report.countries[0];
    assert!(c
        .lag_selection
        .skip_reason()
        .unwrap()
        .starts_with("lag selection failed: "));
    assert!(c.var.result().is_some() && c.structural.result().is_some());
    let md = render_report(&report, OutputFormat::Markdown);
    assert!(md.main().contains("lag selection failed"));

    let missing = PipelineConfig {
        countries: vec!["atlantis".into()],
        keep_going: true,
        ..common::fixture_config()
    };
    let report = run_pipeline_with(&missing, &NoNetwork).unwrap();
    let c = &report.countries[0];
    assert!(c.data.skip_reason().is_some());
    assert_eq!(c.var.skip_reason(), Some("data unavailable"));
}

#[test]
fn synthetic_reference_panel_runs_end_to_end() {
    let cfg = PipelineConfig {
        countries: vec!["bangladesh".into()],
        lag_order: LagChoice::Fixed(2),
        ..common::fixture_config()
    };
    let report = run_pipeline_with(&cfg, &NoNetwork).unwrap();
    let c = &report.countries[0];
    let stab = c.stability.result().unwrap();
    assert!(stab.stable && stab.max_modulus() < 1.0);
    let s = c.structural.result().unwrap();
    for t in &s.set.fevd.tables {
        assert!(t
            .rows
            .iter()
            .all(|r| (r.shares.iter().sum::<f64>() - 100.0).abs() < 1e-6));
    }
    assert!(s.set.historical.max_identity_error() < 1e-8);
    assert_eq!(s.bands.as_ref().unwrap().draws, 200);
    assert!(c.forecast.result().is_some());
}

#[test]
fn config_file_paths_resolve_against_the_file() {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("data/example.toml");
    let cfg = PipelineConfig::from_file(&path).unwrap();
    assert_eq!(cfg.csv_dir, common::fixture_dir());
    assert!(PipelineConfig::from_toml_str("horizon = 0").is_err());
    assert!(PipelineConfig::from_toml_str("no_such_key = 1").is_err());
    let auto = PipelineConfig::from_toml_str(
        "lag_order = \"auto\"\nordering = [\"edu\", \"hdi\", \"health\"]",
    )
    .unwrap();
    assert_eq!(auto.lag_order, LagChoice::Auto);
    assert_eq!(auto.ordering_indices().unwrap(), vec![2, 0, 1]);
}
