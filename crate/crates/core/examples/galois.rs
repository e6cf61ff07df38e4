//! Galois certificates with explicit coordinates, and a failing case.

use pargal::galois::{galois_check, trace_surjective, GaloisCertificate};
use pargal::notation;
use pargal::{fixtures, BaseRing};

fn main() -> pargal::Result<()> {
    let c4 = fixtures::cyclic(4);
    let candidates = [
        ("ex0", fixtures::ex0()),
        ("sec52", fixtures::sec52()),
        ("E_C4", fixtures::harrison_c4()),
        ("trivial on R^2", pargal::SetPartialAction::global(c4, 2, |_, x| x)?),
    ];
    for ring in [BaseRing::Rationals, BaseRing::prime_field(3)?] {
        println!("over {ring}");
        for (name, a) in &candidates {
            match galois_check(a, ring)? {
                GaloisCertificate::Galois { coords } => {
                    let shown: Vec<String> = coords
                        .iter()
                        .map(|(x, y)| format!("({}, {})", notation::element(a.labels(), x), notation::element(a.labels(), y)))
                        .collect();
                    println!("  {name}: Galois, coordinates {}", shown.join(" "));
                }
                GaloisCertificate::NotGalois(why) => println!("  {name}: not Galois ({why:?})"),
            }
            println!("    trace onto invariants: {}", trace_surjective(a, ring)?);
        }
    }
    Ok(())
}
