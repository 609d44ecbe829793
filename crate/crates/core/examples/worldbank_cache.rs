//! The World Bank fetch path with its on-disk cache. By default a canned
//! client stands in for the network; pass `--live` to query the real API.
//!
//!     cargo run --example worldbank_cache [-- --live]

use macrovar::pipeline::{fetch_indicators, DataSource, HttpGet, PipelineConfig, UreqClient};

struct Canned;

impl HttpGet for Canned {
    fn get(&self, url: &str) -> Result<String, String> {
        eprintln!("GET {url}");
        let rows: Vec<String> = (2000..=2022)
            .map(|y| {
                format!(
                    r#"{{"date":"{y}","value":{}}}"#,
                    2.0 + 0.03 * f64::from(y - 2000)
                )
            })
            .collect();
        Ok(format!(r#"[{{"page":1}},[{}]]"#, rows.join(",")))
    }
}

struct Offline;

impl HttpGet for Offline {
    fn get(&self, url: &str) -> Result<String, String> {
        unreachable!("cache replay must not request {url}")
    }
}

fn main() -> macrovar::Result<()> {
    let live = std::env::args().any(|a| a == "--live");
    let dir = std::env::temp_dir().join("macrovar-worldbank-demo");
    let hdi = dir.join("hdi.csv");
    std::fs::create_dir_all(&dir).expect("create demo dir");
    let rows: Vec<String> = (2000..=2022)
        .map(|y| format!("BGD,{y},{:.3}", 0.47 + 0.008 * f64::from(y - 2000)))
        .collect();
    std::fs::write(&hdi, format!("country,year,hdi\n{}\n", rows.join("\n")))
        .expect("write HDI file");

    let cfg = PipelineConfig {
        countries: vec!["bangladesh".into()],
        data_source: DataSource::WorldbankFetch,
        hdi_csv: Some(hdi),
        cache_dir: dir.join(if live { "live-cache" } else { "cache" }),
        start_year: 2000,
        end_year: 2022,
        ..PipelineConfig::default()
    };
    let client: &dyn HttpGet = if live {
        &UreqClient::default()
    } else {
        &Canned
    };
    let first = fetch_indicators("bangladesh", &cfg, client)?;
    println!(
        "fetched {} series, {} years; cache in {}",
        first.nvars(),
        first.nobs(),
        cfg.cache_dir.display()
    );

    let offline = PipelineConfig {
        offline: true,
        ..cfg
    };
    let replay = fetch_indicators("bangladesh", &offline, &Offline)?;
    println!(
        "offline replay identical: {}",
        format!("{first:?}") == format!("{replay:?}")
    );
    Ok(())
}
