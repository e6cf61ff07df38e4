//! Partial isomorphism, isomorphism of globalization pairs, canonical forms.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use pargal::envelope::globalize;
use pargal::fixtures;
use pargal::galois::{canonical_form, global_pair_iso, partial_iso, theorem_pro10_check};
use pargal::BaseRing;

fn main() -> pargal::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(fixtures::seed_from_env());
    let a = fixtures::ex0();
    let b = fixtures::random_relabel(&a, &mut rng);
    let found = partial_iso(&a, &b)?;
    println!("ex0 vs relabeled copy: {:?}", found.witness().map(|w| &w.map));
    assert_eq!(canonical_form(&a), canonical_form(&b));

    let pool = fixtures::pool_c4();
    for (i, (na, x)) in pool.iter().enumerate() {
        for (nb, y) in &pool[i + 1..] {
            let r = theorem_pro10_check(x, y, BaseRing::Rationals)?;
            let pairs = global_pair_iso(&globalize(x)?, &globalize(y)?)?.is_found();
            println!(
                "{na:>9} ~ {nb:<9} partial {:5} global pairs {:5} quotients {:5}",
                r.partial, pairs, r.quotients
            );
        }
    }
    Ok(())
}
