//! The product of two classes, shown on `θ* ∗ θ`.

use pargal::notation;
use pargal::semigroup::{star_product, DeltaConvention};
use pargal::{fixtures, BaseRing, ExtensionRecord};

fn main() -> pargal::Result<()> {
    let q = BaseRing::Rationals;
    let theta = ExtensionRecord::new(fixtures::sec52(), q)?;
    let inv = ExtensionRecord::new(fixtures::sec52().inverse_action(), q)?;
    let p = star_product(&inv, &theta, DeltaConvention::Antidiagonal)?;

    let labels: Vec<String> = p.tensor.action.labels().iter().map(|l| notation::compact_tensor_label(l)).collect();
    println!("tensor has {} points", labels.len());
    println!("invariants under delta: {}", notation::direct_sum(&labels, p.quotient.base.blocks()));
    let s = p.node.action();
    for g in s.group().elements() {
        let t = &p.quotient.tilde_idem[p.coset_of[g]];
        println!(
            "  ({},1): 1~ = {}",
            s.group().name(g),
            notation::set(&labels, &p.quotient.base.expand(t))
        );
    }
    let compact: Vec<String> = s.labels().iter().map(|l| notation::compact_tensor_label(l)).collect();
    let s = s.clone().with_labels(compact);
    for g in s.group().elements().skip(1) {
        println!("  theta~_{}: {}", s.group().name(g), notation::map(&s, g));
    }
    Ok(())
}
