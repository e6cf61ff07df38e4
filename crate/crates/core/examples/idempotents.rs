//! The idempotent of a class by its two constructions.

use pargal::galois::partial_iso;
use pargal::semigroup::{idempotent_of, pro_fim_check, DeltaConvention};
use pargal::{fixtures, BaseRing, ExtensionRecord};

fn main() -> pargal::Result<()> {
    let d = DeltaConvention::Antidiagonal;
    for (name, a) in fixtures::pool_c4() {
        let rec = ExtensionRecord::new(a, BaseRing::Rationals)?;
        let r = idempotent_of(&rec, d)?;
        let agree = partial_iso(r.route_a.action(), r.route_b.action())?.is_found();
        let pf = pro_fim_check(&rec, d)?;
        println!(
            "{name:>9}: {} points, hat {} points, routes agree {agree}, global {}, every 1_g nonzero {}",
            r.route_a.action().points(),
            r.hat.action.points(),
            r.route_a.action().is_global(),
            pf.hypothesis
        );
    }
    Ok(())
}
