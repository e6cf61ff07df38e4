//! The enveloping action of a partial action, with its embedding.

use pargal::envelope::globalize;
use pargal::fixtures;
use pargal::notation;

fn main() -> pargal::Result<()> {
    for (name, a) in [("ex0", fixtures::ex0()), ("ec6r", fixtures::ec6r()), ("sec52", fixtures::sec52())] {
        let gl = globalize(&a)?;
        let t = gl.global();
        println!("{name}: {} points embedded into {}", a.points(), t.points());
        println!("  S = {}", notation::set(t.labels(), &gl.unit_s()));
        for g in t.group().elements().skip(1) {
            println!("  beta_{}: {}", t.group().name(g), notation::map(t, g));
        }
        assert!(gl.verify().is_empty());
    }
    Ok(())
}
