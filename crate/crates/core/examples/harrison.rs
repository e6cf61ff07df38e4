//! Globalization as a map into the Harrison group.

use pargal::semigroup::{harrison_identity, pi_homomorphism_check, pi_image, DeltaConvention};
use pargal::{fixtures, BaseRing, ExtensionRecord};

fn main() -> pargal::Result<()> {
    let q = BaseRing::Rationals;
    let id = harrison_identity(&fixtures::cyclic(4), q)?;
    println!("identity class: {} points", id.action().points());
    let pool: Vec<(&str, ExtensionRecord)> = fixtures::pool_c4()
        .into_iter()
        .map(|(n, a)| Ok((n, ExtensionRecord::new(a, q)?)))
        .collect::<pargal::Result<_>>()?;
    for (n, a) in &pool {
        println!("pi({n}) has {} points", pi_image(a)?.action().points());
    }
    let mut ok = 0;
    let mut total = 0;
    for (i, (_, a)) in pool.iter().enumerate() {
        for (_, b) in &pool[i..] {
            total += 1;
            ok += usize::from(pi_homomorphism_check(a, b, DeltaConvention::Antidiagonal)?.holds());
        }
    }
    println!("pi(a*b) = pi(a)pi(b) on {ok}/{total} pairs");
    Ok(())
}
