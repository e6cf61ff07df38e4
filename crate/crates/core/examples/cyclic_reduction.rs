//! Splitting an action of `C2×C3` into one piece per cyclic factor.

use pargal::group::build_cyclic_product;
use pargal::semigroup::{cyclic_reduce, cyclic_round_trip, recompose};
use pargal::{fixtures, BaseRing, ExtensionRecord};
use std::sync::Arc;

fn main() -> pargal::Result<()> {
    let g = Arc::new(build_cyclic_product(&[2, 3])?);
    let rec = ExtensionRecord::new(fixtures::regular(&g), BaseRing::Rationals)?;
    let pieces = cyclic_reduce(&rec)?;
    for p in &pieces {
        println!("piece over C{}: {} points", p.group().order(), p.action().points());
    }
    let back = recompose(&pieces, &g, BaseRing::Rationals)?;
    println!("recomposed: {} points", back.action().points());
    println!("{:?}", cyclic_round_trip(&rec)?);
    Ok(())
}
