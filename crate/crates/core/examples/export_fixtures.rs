//! Writes the worked examples as JSON descriptors.
//!
//! `cargo run --example export_fixtures -- crates/core/fixtures`

use std::path::PathBuf;

use pargal::fixtures;
use pargal::json::action_to_json;

fn main() -> std::io::Result<()> {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir)?;
    let all = [
        ("ex0", fixtures::ex0()),
        ("ec6r", fixtures::ec6r()),
        ("sec52", fixtures::sec52()),
        ("sec52_inverse", fixtures::sec52().inverse_action()),
        ("broken_p3", fixtures::broken_p3()),
        ("c4_half_swap", fixtures::c4_half_swap()),
        ("harrison_c4", fixtures::harrison_c4()),
    ];
    for (name, a) in all {
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, action_to_json(&a) + "\n")?;
        println!("wrote {}", path.display());
    }
    Ok(())
}
