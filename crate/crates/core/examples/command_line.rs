// Drives the command-line front end in process: parses an input document,
// runs a check and reads back the JSON report.

use spindlekit::cli::run_command;
use spindlekit::io::{parse_input, ReportDocument};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let parsed = parse_input("x1,x2\n0,0\n0,0\n2,0\n")?;
    println!(
        "csv input: {} points, {} merged",
        parsed.set.as_ref().map_or(0, |s| s.len()),
        parsed.duplicates_merged
    );

    let path = std::env::temp_dir().join("spindlekit_twopoints.json");
    std::fs::write(&path, r#"{"dim":2,"points":[[0,0],[2,0]]}"#)?;
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = [
        "spindlekit",
        "check",
        "--property",
        "spherical-support",
        "-r",
        "1",
    ];
    let code = run_command(
        argv.iter()
            .map(|s| s.to_string())
            .chain([path.display().to_string()]),
        &mut out,
        &mut err,
    );
    let report = ReportDocument::from_json(std::str::from_utf8(&out)?)?;
    println!("exit {code}, verdict {:?}", report.reports[0].verdict);
    assert_eq!(code, 0);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run_example() {
        eprintln!("{e}");
        std::process::exit(1);
    }
}
