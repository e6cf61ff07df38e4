//! Invariants, the idempotent `e_H` and the quotient partial action.
//!
//! Both constructions of the quotient run and are compared.

use pargal::envelope::{compute_e_h, globalize, psi_map};
use pargal::group::subgroup_closure;
use pargal::notation;
use pargal::quotient::{is_quotient_global, quotient_partial_action, quotient_partial_action_direct};
use pargal::{fixtures, AlgElement, BaseRing, SetPartialAction};

fn show(name: &str, a: &SetPartialAction, generator: usize) -> pargal::Result<()> {
    let h = subgroup_closure(a.group(), &[generator])?;
    let gl = globalize(a)?;
    let n = gl.size();
    let images: Vec<AlgElement> = (0..n)
        .map(|y| psi_map(&gl, &h, &AlgElement::basis(BaseRing::Rationals, n, y)))
        .collect();
    println!("{name}, H generated by {}", a.group().name(generator));
    println!("  psi_H: {}", notation::linear_image(gl.global().labels(), &images, &notation::letters(n)));
    println!("  e_H = {}", notation::set(gl.global().labels(), &compute_e_h(&gl, &h).e_h));

    let qa = quotient_partial_action(a, &h)?;
    println!("  S^H = {}", notation::direct_sum(a.labels(), qa.base.blocks()));
    for (c, t) in qa.tilde_idem.iter().enumerate() {
        println!(
            "  {}: 1~ = {}, alpha = {}",
            qa.action.group().name(c),
            notation::set(a.labels(), &qa.base.expand(t)),
            notation::map(&qa.action, c)
        );
    }
    let glob = is_quotient_global(a, &h)?;
    println!("  global: {} (tests agree: {})", glob.is_global(), glob.agree());
    println!("  routes agree: {}", qa == quotient_partial_action_direct(a, &h)?);
    Ok(())
}

fn main() -> pargal::Result<()> {
    show("ex0", &fixtures::ex0(), 2)?;
    show("ec6r", &fixtures::ec6r(), 3)
}
