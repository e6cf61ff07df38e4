//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines always print:
//! `cargo test --test acceptance`.

mod common;

use std::time::{Duration, Instant};

use pargal::cli::{reproduce, Example};
use pargal::envelope::globalize;
use pargal::galois::{partial_iso, theorem_pro10_check};
use pargal::group::subgroup_closure;
use pargal::quotient::{galois_transfer_check, is_quotient_global, quotient_partial_action, quotient_partial_action_direct};
use pargal::semigroup::{
    cyclic_round_trip, idempotent_of, pi_homomorphism_check, pro_fim_check, recompose, star_product, DeltaConvention,
};
use pargal::{fixtures, BaseRing, SetPartialAction};

use common::{all_fixtures, c2xc3, normal_subgroups, record, regular_restrictions, Classes};

type Check = Result<(), String>;

enum Outcome {
    Pass,
    Fail(String),
    /// A documented counterexample to the criterion as stated.
    Known(String),
}

impl From<Check> for Outcome {
    fn from(c: Check) -> Self {
        match c {
            Ok(()) => Outcome::Pass,
            Err(why) => Outcome::Fail(why),
        }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn golden(ex: Example) -> Check {
    let d = reproduce(ex).map_err(|e| e.to_string())?;
    let bad: Vec<String> = d.mismatches().iter().map(|(k, e, a)| format!("{k}: want {e}, got {a}")).collect();
    ensure(bad.is_empty(), || bad.join("; "))
}

fn ex0() -> Check {
    golden(Example::Ex0)?;
    // The quotient is the swap of two blocks by the generator of C2.
    let a = fixtures::ex0();
    let h = subgroup_closure(a.group(), &[2]).map_err(|e| e.to_string())?;
    let qa = quotient_partial_action(&a, &h).map_err(|e| e.to_string())?;
    ensure(qa.action.is_global() && qa.action.points() == 2 && qa.action.map(1, 0) == Some(1), || {
        format!("quotient is not the C2 swap: {:?}", qa.action)
    })
}

fn ec6r() -> Check {
    golden(Example::Ec6r)
}

fn sec52() -> Check {
    golden(Example::Sec52)?;
    let q = BaseRing::Rationals;
    let theta = record(fixtures::sec52());
    let inv = record(fixtures::sec52().inverse_action());
    let p = star_product(&inv, &theta, DeltaConvention::Antidiagonal).map_err(|e| e.to_string())?;
    // Points: e11+e22, e12, e21.
    let expected = SetPartialAction::new(
        fixtures::cyclic(4),
        3,
        vec![
            vec![Some(0), Some(1), Some(2)],
            vec![Some(1), None, Some(0)],
            vec![None, Some(2), Some(1)],
            vec![Some(2), Some(0), None],
        ],
    )
    .map_err(|e| e.to_string())?;
    ensure(expected.validate().is_valid(), || "expected table violates the axioms".into())?;
    ensure(*p.node.action().maps() == *expected.maps(), || format!("tables differ: {:?}", p.node.action().maps()))?;
    let iso = partial_iso(p.node.action(), &expected).map_err(|e| e.to_string())?;
    ensure(iso.is_found(), || "not isomorphic to the expected table".into())?;
    ensure(pargal::galois::galois_check(&expected, q).map_err(|e| e.to_string())?.is_galois(), || "not Galois".into())
}

/// Regularity and idempotency are reported separately: where they fail,
/// the product collapses onto the globalization.
struct LawReport {
    regular: Vec<String>,
    collapsed: Vec<String>,
    /// Classes `a*∗a` whose square is not themselves.
    not_idempotent: usize,
}

fn semigroup_laws() -> Result<LawReport, String> {
    let mut cl = Classes::new(DeltaConvention::Antidiagonal);
    let mut rep = LawReport {
        regular: Vec::new(),
        collapsed: Vec::new(),
        not_idempotent: 0,
    };
    let mut pools = Vec::new();
    for pool in [fixtures::pool_c2(), fixtures::pool_c4()] {
        let ids: Vec<(String, usize)> = pool
            .into_iter()
            .map(|(n, a)| (format!("{n}/C{}", a.group().order()), cl.add_action(a)))
            .collect();
        pools.push(ids);
    }
    ensure(pools.iter().map(Vec::len).sum::<usize>() >= 6, || "pool too small".into())?;
    for named in &pools {
        let ids: Vec<usize> = named.iter().map(|p| p.1).collect();
        for &a in &ids {
            for &b in &ids {
                let (ab, ba) = (cl.mul(a, b), cl.mul(b, a));
                ensure(ab == ba, || format!("a*b != b*a for {a},{b}"))?;
                for &c in &ids {
                    let l = cl.mul(ab, c);
                    let bc = cl.mul(b, c);
                    let r = cl.mul(a, bc);
                    ensure(l == r, || format!("associativity fails on {a},{b},{c}"))?;
                }
            }
        }
        for (name, a) in named {
            let a = *a;
            let s = cl.inv(a);
            let x = cl.mul(a, s);
            let asa = cl.mul(x, a);
            if asa == a {
                rep.regular.push(name.clone());
                continue;
            }
            let gl = globalize(cl.nodes[a].action()).map_err(|e| e.to_string())?;
            let onto_global = partial_iso(cl.nodes[asa].action(), gl.global()).map_err(|e| e.to_string())?.is_found();
            ensure(onto_global, || format!("a a* a for {name} is neither a nor its globalization"))?;
            rep.collapsed.push(name.clone());
        }
        // Inverses are unique and idempotents commute, over everything
        // reached so far in this group.
        let g = cl.nodes[ids[0]].action().group().clone();
        let reached: Vec<usize> = (0..cl.nodes.len()).filter(|&i| *cl.nodes[i].action().group() == g).collect();
        for &a in &reached {
            let s = cl.inv(a);
            for &b in &reached {
                let ab = cl.mul(a, b);
                let aba = cl.mul(ab, a);
                let ba = cl.mul(b, a);
                let bab = cl.mul(ba, b);
                if aba == a && bab == b {
                    ensure(b == s, || format!("{b} is an inverse of {a} other than {s}"))?;
                }
            }
        }
        let idem: Vec<usize> = reached
            .iter()
            .map(|&a| {
                let s = cl.inv(a);
                cl.mul(s, a)
            })
            .collect();
        for &e in &idem {
            let ee = cl.mul(e, e);
            if ee != e {
                let gl = globalize(cl.nodes[e].action()).map_err(|e| e.to_string())?;
                let onto_global = partial_iso(cl.nodes[ee].action(), gl.global()).map_err(|e| e.to_string())?.is_found();
                ensure(onto_global, || format!("e*e for {e} is neither e nor its globalization"))?;
                rep.not_idempotent += 1;
            }
            for &f in &idem {
                ensure(cl.mul(e, f) == cl.mul(f, e), || format!("{e}*{f} and {f}*{e} differ"))?;
            }
        }
    }
    Ok(rep)
}

fn laws_outcome() -> Outcome {
    match semigroup_laws() {
        Err(why) => Outcome::Fail(why),
        Ok(r) if r.collapsed.is_empty() && r.not_idempotent == 0 => Outcome::Pass,
        Ok(r) => Outcome::Known(format!(
            "a∗a*∗a ≅ a fails on {} (it is the globalization instead) and holds on {}; \
             {} of the classes a*∗a square to their globalization rather than to themselves; \
             commutativity, associativity and uniqueness of inverses hold",
            r.collapsed.join(", "),
            r.regular.join(", "),
            r.not_idempotent
        )),
    }
}

fn two_routes() -> Check {
    for (name, a) in all_fixtures() {
        for h in normal_subgroups(a.group()) {
            let d = quotient_partial_action(&a, &h).map_err(|e| e.to_string())?;
            let r = quotient_partial_action_direct(&a, &h).map_err(|e| e.to_string())?;
            ensure(d == r, || format!("quotient routes differ on {name}, H = {:?}", h.members()))?;
        }
    }
    for (name, a) in fixtures::pool_c2().into_iter().chain(fixtures::pool_c4()) {
        let r = idempotent_of(&record(a), DeltaConvention::Antidiagonal).map_err(|e| e.to_string())?;
        let same = partial_iso(r.route_a.action(), r.route_b.action()).map_err(|e| e.to_string())?.is_found();
        ensure(same, || format!("idempotent routes differ on {name}"))?;
    }
    let mut rng = fixtures::rng_from_env();
    let groups = [fixtures::cyclic(4), fixtures::cyclic(6), c2xc3(), std::sync::Arc::new(pargal::group::symmetric_group_s3())];
    let mut checked = 0;
    while checked < 200 {
        let g = &groups[checked % groups.len()];
        let a = fixtures::random_action(g, &mut rng);
        let subs = normal_subgroups(g);
        let h = &subs[checked % subs.len()];
        let r = is_quotient_global(&a, h).map_err(|e| e.to_string())?;
        ensure(r.agree(), || format!("globality tests disagree on random action #{checked}"))?;
        checked += 1;
    }
    Ok(())
}

fn transfers() -> Check {
    for (name, a, gen) in [("ex0", fixtures::ex0(), 2), ("ec6r", fixtures::ec6r(), 3)] {
        let h = subgroup_closure(a.group(), &[gen]).map_err(|e| e.to_string())?;
        let t = galois_transfer_check(&record(a), &h).map_err(|e| format!("{name}: {e}"))?;
        ensure(t.certificate.is_galois() && t.invariants_match, || format!("transfer fails on {name}"))?;
    }
    let mut pairs = 0;
    for pool in [fixtures::pool_c2(), fixtures::pool_c4()] {
        for (i, (na, a)) in pool.iter().enumerate() {
            for (nb, b) in &pool[i..] {
                let r = theorem_pro10_check(a, b, BaseRing::Rationals).map_err(|e| e.to_string())?;
                ensure(r.agree(), || format!("equivalence clauses disagree on {na}, {nb}: {r:?}"))?;
                pairs += 1;
                let pi = pi_homomorphism_check(&record(a.clone()), &record(b.clone()), DeltaConvention::Antidiagonal)
                    .map_err(|e| e.to_string())?;
                ensure(pi.holds(), || format!("pi is not multiplicative on {na}, {nb}: {pi:?}"))?;
            }
        }
    }
    ensure(pairs >= 10, || format!("only {pairs} pairs"))
}

fn pro_fim() -> Check {
    let d = DeltaConvention::Antidiagonal;
    let r = pro_fim_check(&record(fixtures::ex0()), d).map_err(|e| e.to_string())?;
    ensure(r.hypothesis && r.idempotent_global && r.over_identity, || format!("ex0: {r:?}"))?;
    let rec = record(fixtures::sec52());
    let r = pro_fim_check(&rec, d).map_err(|e| e.to_string())?;
    ensure(!r.hypothesis && !r.idempotent_global, || format!("sec52: {r:?}"))?;
    let e = idempotent_of(&rec, d).map_err(|e| e.to_string())?.route_a;
    let partial = e.action().group().elements().any(|g| e.action().ideal(g).len() < e.action().points());
    ensure(partial, || "sec52 idempotent has every 1~ equal to 1".into())
}

fn cyclic_reduction() -> Check {
    let g = c2xc3();
    let mut cases: Vec<(String, SetPartialAction)> = vec![("E_{C2×C3}".into(), fixtures::regular(&g))];
    // C6 ≅ C2×C3 by k ↦ (k mod 2, k mod 3); pull the shift back along it.
    let shift = fixtures::c6_shift();
    let sigma = g
        .elements()
        .map(|x| {
            let (a, b) = (x / 3, x % 3);
            let k = (0..6).find(|k| k % 2 == a && k % 3 == b).expect("CRT");
            shift.maps()[k].clone()
        })
        .collect();
    cases.push(("C6 shift transported".into(), SetPartialAction::new(g.clone(), 6, sigma).map_err(|e| e.to_string())?));
    let c2 = fixtures::cyclic(2);
    let c3 = fixtures::cyclic(3);
    for a2 in regular_restrictions(&c2) {
        for a3 in regular_restrictions(&c3) {
            let name = format!("{}-point C2 piece ⊗ {}-point C3 piece", a2.points(), a3.points());
            let p = recompose(&[record(a2.clone()), record(a3)], &g, BaseRing::Rationals).map_err(|e| e.to_string())?;
            cases.push((name, p.action().clone()));
        }
    }
    for (name, a) in cases {
        let r = cyclic_round_trip(&record(a)).map_err(|e| e.to_string())?;
        ensure(r.isomorphic, || format!("round trip fails on {name}: {r:?}"))?;
    }
    Ok(())
}

fn wrap(f: fn() -> Check) -> impl Fn() -> Outcome {
    move || f().into()
}

fn main() {
    let criteria: Vec<(&str, Duration, Box<dyn Fn() -> Outcome>)> = vec![
        ("ex0 reproduction", Duration::from_secs(1), Box::new(wrap(ex0))),
        ("ec6r reproduction", Duration::from_secs(1), Box::new(wrap(ec6r))),
        ("idempotent of theta reproduction", Duration::from_secs(5), Box::new(wrap(sec52))),
        ("inverse semigroup laws", Duration::from_secs(60), Box::new(laws_outcome)),
        ("two-route agreements", Duration::from_secs(30), Box::new(wrap(two_routes))),
        ("theorem transfers", Duration::from_secs(30), Box::new(wrap(transfers))),
        ("idempotent over the identity", Duration::from_secs(5), Box::new(wrap(pro_fim))),
        ("cyclic reduction round trip", Duration::from_secs(10), Box::new(wrap(cyclic_reduction))),
    ];
    println!("acceptance (seed {})", fixtures::seed_from_env());
    let (mut passed, mut known, mut failed) = (0, 0, 0);
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut res = check();
        let took = start.elapsed();
        if took > *limit && matches!(res, Outcome::Pass) {
            res = Outcome::Fail(format!("took {took:.2?}, limit {limit:?}"));
        }
        match res {
            Outcome::Pass => {
                passed += 1;
                println!("PASS  {}. {name} ({took:.2?})", i + 1);
            }
            Outcome::Known(why) => {
                known += 1;
                println!("FAIL  {}. {name} ({took:.2?}): counterexample, expected: {why}", i + 1);
            }
            Outcome::Fail(why) => {
                failed += 1;
                println!("FAIL  {}. {name} ({took:.2?}): {why}", i + 1);
            }
        }
    }
    println!("{passed} passed, {known} failed with a known counterexample, {failed} failed unexpectedly");
    if failed > 0 {
        std::process::exit(1);
    }
}
