//! Axiom checks on a JSON descriptor given on the command line.

use pargal::json::parse_action;

fn main() {
    let Some(path) = std::env::args().nth(1) else {
        eprintln!("usage: validate <action.json>");
        std::process::exit(2);
    };
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| {
        eprintln!("{path}: {e}");
        std::process::exit(2);
    });
    let a = match parse_action(&text) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("{e}");
            std::process::exit(2);
        }
    };
    let report = a.validate();
    for v in &report.violations {
        println!("{:?}: {}", v.axiom, v.detail);
    }
    println!("{}", if report.is_valid() { "valid" } else { "invalid" });
    std::process::exit(i32::from(!report.is_valid()));
}
