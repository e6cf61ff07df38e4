//! Recomputes the worked examples and diffs them against stored values.

use pargal::cli::{reproduce, Example};

fn main() -> pargal::Result<()> {
    let mut bad = 0;
    for ex in [Example::Ex0, Example::Ec6r, Example::Sec52] {
        let diff = reproduce(ex)?;
        println!("{ex:?}: {} fields", diff.fields.len());
        for (field, expected, actual) in diff.mismatches() {
            println!("  {field}: expected {expected}, got {actual}");
            bad += 1;
        }
    }
    std::process::exit(i32::from(bad > 0));
}
