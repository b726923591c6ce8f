//! Library surface of the experiment runner, exposed for integration
//! tests: config parsing, experiment execution, and output writing.

pub mod config;
pub mod experiments;

use std::path::Path;

pub use config::{parse_config, ExperimentConfig, ExperimentKind};
pub use experiments::{run_experiment, RunOutput};

/// Execute a parsed config and write its outputs (plus `run_manifest.txt`)
/// under `out_dir`. Returns the run output for inspection.
pub fn run_to_dir(cfg: &ExperimentConfig, out_dir: &Path) -> Result<RunOutput, String> {
    let output = run_experiment(cfg)?;
    std::fs::create_dir_all(out_dir)
        .map_err(|e| format!("cannot create output directory {}: {e}", out_dir.display()))?;
    for (name, contents) in &output.files {
        let path = out_dir.join(name);
        std::fs::write(&path, contents)
            .map_err(|e| format!("cannot write {}: {e}", path.display()))?;
    }
    let manifest = render_manifest(cfg, &output);
    std::fs::write(out_dir.join("run_manifest.txt"), manifest)
        .map_err(|e| format!("cannot write run manifest: {e}"))?;
    Ok(output)
}

fn render_manifest(cfg: &ExperimentConfig, output: &RunOutput) -> String {
    let mut lines = vec![
        format!("experiment: {}", cfg.kind.name()),
        format!("seed: {}", cfg.seed),
        format!(
            "params: {}",
            serde_json::to_string_pretty(&cfg.kind.params_json()).expect("params render")
        ),
        String::from("outputs:"),
    ];
    for (name, contents) in &output.files {
        lines.push(format!("  {} ({} bytes)", name, contents.len()));
    }
    lines.push(String::from("report:"));
    for line in &output.report_lines {
        lines.push(format!("  {line}"));
    }
    lines.push(format!(
        "status: {}",
        if output.passed { "PASS" } else { "FAIL" }
    ));
    lines.join("\n") + "\n"
}
