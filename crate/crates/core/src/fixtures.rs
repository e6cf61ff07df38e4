//! Worked examples, fixture pools and seeded random generators.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::envelope::Globalization;
use crate::group::{all_subgroups, build_cyclic_product, GroupTable, Subgroup};
use crate::paction::{induce_from_global, SetPartialAction};

/// Seed used when `PARGAL_SEED` is unset.
pub const DEFAULT_SEED: u64 = 0x5eed_2026;

pub fn seed_from_env() -> u64 {
    std::env::var("PARGAL_SEED")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn rng_from_env() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed_from_env())
}

pub fn cyclic(n: usize) -> Arc<GroupTable> {
    Arc::new(build_cyclic_product(&[n]).expect("cyclic group"))
}

/// `G` acting on itself by left translation, `e_h ↦ e_{gh}`.
pub fn regular(g: &Arc<GroupTable>) -> SetPartialAction {
    let names = g.names().iter().map(|n| format!("e_{n}")).collect();
    SetPartialAction::global(g.clone(), g.order(), |a, x| g.mul(a, x))
        .expect("regular action")
        .with_labels(names)
}

/// The four-cycle `β_g(e_j) = e_{j−1}` on `e1..e4`.
pub fn c4_cycle() -> SetPartialAction {
    SetPartialAction::global(cyclic(4), 4, |g, x| (x + 4 - g) % 4).expect("global")
}

/// `C4` on `Re1 ⊕ Re2 ⊕ Re3` with `S_g = ⟨e1,e2⟩`, `S_{g²} = ⟨e1,e3⟩`,
/// `S_{g³} = ⟨e2,e3⟩`.
pub fn ex0() -> SetPartialAction {
    induce_from_global(&c4_cycle(), &[0, 1, 2]).expect("induced")
}

/// `C6` shifting `e1..e6`: `β_{g^j}(e_i) = e_{i+j}`.
pub fn c6_shift() -> SetPartialAction {
    SetPartialAction::global(cyclic(6), 6, |g, x| (x + g) % 6).expect("global")
}

/// The shift restricted to `Re1 ⊕ Re3 ⊕ Re6`.
pub fn ec6r() -> SetPartialAction {
    induce_from_global(&c6_shift(), &[0, 2, 5]).expect("induced")
}

pub fn ec6r_globalization() -> Globalization {
    Globalization::from_global(c6_shift(), vec![0, 2, 5], ec6r()).expect("globalization")
}

/// `C4` on `Re1 ⊕ Re2` with `θ_g(e1) = e2`, `S_{g²} = 0`.
pub fn sec52() -> SetPartialAction {
    let sigma = vec![
        vec![Some(0), Some(1)],
        vec![Some(1), None],
        vec![None, None],
        vec![None, Some(0)],
    ];
    SetPartialAction::new(cyclic(4), 2, sigma).expect("well-formed")
}

/// `sec52` with `σ_{g²}` the identity: breaks the intersection axiom.
pub fn broken_p3() -> SetPartialAction {
    let mut sigma = sec52().maps().to_vec();
    sigma[2] = vec![Some(0), Some(1)];
    SetPartialAction::new(cyclic(4), 2, sigma).expect("well-formed")
}

/// `E_{C4}(R)`.
pub fn harrison_c4() -> SetPartialAction {
    regular(&cyclic(4))
}

/// `C4` on two points swapped by `g²`.
pub fn c4_half_swap() -> SetPartialAction {
    induce_from_global(&regular(&cyclic(4)), &[0, 2]).expect("induced")
}

/// Named Galois fixtures over `C2`.
pub fn pool_c2() -> Vec<(&'static str, SetPartialAction)> {
    let c2 = cyclic(2);
    vec![
        ("R", SetPartialAction::base_ring_action(c2.clone())),
        ("E_C2", regular(&c2)),
    ]
}

/// Named Galois fixtures over `C4`.
pub fn pool_c4() -> Vec<(&'static str, SetPartialAction)> {
    vec![
        ("R", SetPartialAction::base_ring_action(cyclic(4))),
        ("theta", sec52()),
        ("theta*", sec52().inverse_action()),
        ("half-swap", c4_half_swap()),
        ("ex0", ex0()),
        ("ex0*", ex0().inverse_action()),
        ("E_C4", harrison_c4()),
    ]
}

/// A random permutation of `0..n` applied as a relabeling.
pub fn random_relabel<R: Rng>(a: &SetPartialAction, rng: &mut R) -> SetPartialAction {
    let mut perm: Vec<usize> = (0..a.points()).collect();
    perm.shuffle(rng);
    a.relabel(&perm)
}

/// Induced from the regular action on a random nonempty subset of `G`.
/// These are exactly the split partial Galois actions, up to relabeling.
pub fn random_galois<R: Rng>(g: &Arc<GroupTable>, rng: &mut R) -> SetPartialAction {
    let n = g.order();
    let mut subset: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    if subset.is_empty() {
        subset.push(rng.gen_range(0..n));
    }
    let a = induce_from_global(&regular(g), &subset).expect("induced");
    random_relabel(&a, rng)
}

/// Left cosets `G/K` with the translation action.
fn coset_space(g: &Arc<GroupTable>, k: &Subgroup) -> (usize, Vec<Vec<usize>>) {
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut count = 0;
    for x in g.elements() {
        if coset_of[x] == usize::MAX {
            for &m in k.members() {
                coset_of[g.mul(x, m)] = count;
            }
            count += 1;
        }
    }
    let mut rep = vec![0; count];
    for x in g.elements().rev() {
        rep[coset_of[x]] = x;
    }
    let act = g
        .elements()
        .map(|a| (0..count).map(|c| coset_of[g.mul(a, rep[c])]).collect())
        .collect();
    (count, act)
}

/// A random valid partial action: a random subset of a random finite
/// `G`-set made of one to three coset spaces.
pub fn random_action<R: Rng>(g: &Arc<GroupTable>, rng: &mut R) -> SetPartialAction {
    let subs = all_subgroups(g);
    let orbits = rng.gen_range(1..=3);
    let mut act: Vec<Vec<usize>> = vec![Vec::new(); g.order()];
    let mut total = 0;
    for _ in 0..orbits {
        let k = &subs[rng.gen_range(0..subs.len())];
        let (count, local) = coset_space(g, k);
        for (row, l) in act.iter_mut().zip(local) {
            row.extend(l.into_iter().map(|c| c + total));
        }
        total += count;
    }
    let global = SetPartialAction::global(g.clone(), total, |a, x| act[a][x]).expect("global");
    let mut subset: Vec<usize> = (0..total).filter(|_| rng.gen_bool(0.6)).collect();
    if subset.is_empty() {
        subset.push(rng.gen_range(0..total));
    }
    let a = induce_from_global(&global, &subset).expect("induced");
    random_relabel(&a, rng)
}
