//! Running a suite from a TOML config, as the waldkit binary does.

use waldkit::cli::{run_suite, Suite, SuiteConfig};

const CONFIG: &str = r#"
instances = ["pointed_sets:2"]
n_max = 1
m_max = 1
trunc = 2
formulation = "modern"
out = "target/waldkit-example"
"#;

fn main() -> waldkit::Result<()> {
    let cfg = SuiteConfig::from_toml(CONFIG)?;
    let report = run_suite(&cfg, Suite::Sdot)?;
    print!("{}", report.summary());
    println!("exit code would be {}", report.status.exit_code());

    match SuiteConfig::from_toml("n_max = \"two\"") {
        Err(e) => println!("bad config: {}", e),
        Ok(_) => println!("bad config accepted"),
    }
    Ok(())
}
