//! Closure of a few classes, split into groups over a semilattice.

use pargal::semigroup::{clifford_decompose, DeltaConvention};
use pargal::{fixtures, BaseRing, ExtensionRecord};

fn main() -> pargal::Result<()> {
    let budget = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(64);
    let seeds = [fixtures::sec52(), fixtures::c4_half_swap(), fixtures::ex0()]
        .into_iter()
        .map(|a| ExtensionRecord::new(a, BaseRing::Rationals))
        .collect::<pargal::Result<Vec<_>>>()?;
    let r = clifford_decompose(&seeds, budget, DeltaConvention::Antidiagonal)?;
    println!("{} classes{}", r.nodes.len(), if r.truncated { ", truncated" } else { "" });
    for (e, members) in r.idempotents.iter().zip(&r.components) {
        let pts = r.nodes[*e].action().points();
        println!("  idempotent [{e}] ({pts} points): {} members {members:?}", members.len());
    }
    println!("  order: {:?}", r.order);
    println!("  membership criterion agrees: {}", r.criterion_agrees);
    println!("  a*∗a classes that are not idempotent: {:?}", r.not_idempotent);
    Ok(())
}
