//! Shared helpers for the integration suites.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use pargal::galois::CanonicalForm;
use pargal::group::{all_subgroups, build_cyclic_product, is_normal, GroupTable, Subgroup};
use pargal::paction::induce_from_global;
use pargal::semigroup::{inverse_action, star_par, DeltaConvention, SemigroupNode};
use pargal::{fixtures, BaseRing, ExtensionRecord, SetPartialAction};

pub fn record(a: SetPartialAction) -> ExtensionRecord {
    ExtensionRecord::new(a, BaseRing::Rationals).expect("record")
}

pub fn normal_subgroups(g: &GroupTable) -> Vec<Subgroup> {
    all_subgroups(g).into_iter().filter(|h| is_normal(g, h)).collect()
}

/// Every fixture with a name, valid but not necessarily Galois.
pub fn all_fixtures() -> Vec<(String, SetPartialAction)> {
    let mut out: Vec<(String, SetPartialAction)> = vec![
        ("ex0".into(), fixtures::ex0()),
        ("ec6r".into(), fixtures::ec6r()),
        ("sec52".into(), fixtures::sec52()),
        ("c6_shift".into(), fixtures::c6_shift()),
        ("c4_cycle".into(), fixtures::c4_cycle()),
        ("S3 regular".into(), fixtures::regular(&Arc::new(pargal::group::symmetric_group_s3()))),
    ];
    for (n, a) in fixtures::pool_c2().into_iter().chain(fixtures::pool_c4()) {
        out.push((format!("pool {n} over C{}", a.group().order()), a));
    }
    out
}

/// Every Galois action of `C_n` obtained from the regular action on a
/// nonempty subset of the group.
pub fn regular_restrictions(g: &Arc<GroupTable>) -> Vec<SetPartialAction> {
    let n = g.order();
    let reg = fixtures::regular(g);
    (1u32..(1 << n))
        .map(|mask| {
            let subset: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            induce_from_global(&reg, &subset).expect("induced")
        })
        .collect()
}

pub fn c2xc3() -> Arc<GroupTable> {
    Arc::new(build_cyclic_product(&[2, 3]).expect("C2×C3"))
}

/// Memoized arithmetic on classes, keyed by canonical form.
pub struct Classes {
    pub delta: DeltaConvention,
    pub nodes: Vec<SemigroupNode>,
    index: HashMap<CanonicalForm, usize>,
    products: HashMap<(usize, usize), usize>,
    inverses: HashMap<usize, usize>,
}

impl Classes {
    pub fn new(delta: DeltaConvention) -> Self {
        Self {
            delta,
            nodes: Vec::new(),
            index: HashMap::new(),
            products: HashMap::new(),
            inverses: HashMap::new(),
        }
    }

    pub fn add(&mut self, node: SemigroupNode) -> usize {
        if let Some(&i) = self.index.get(&node.form) {
            return i;
        }
        self.index.insert(node.form.clone(), self.nodes.len());
        self.nodes.push(node);
        self.nodes.len() - 1
    }

    pub fn add_action(&mut self, a: SetPartialAction) -> usize {
        self.add(SemigroupNode::new(a, BaseRing::Rationals).expect("Galois"))
    }

    /// Ordered product, so commutativity is a genuine check.
    pub fn mul(&mut self, i: usize, j: usize) -> usize {
        if let Some(&k) = self.products.get(&(i, j)) {
            return k;
        }
        let node = star_par(&self.nodes[i].record, &self.nodes[j].record, self.delta).expect("product");
        let k = self.add(node);
        self.products.insert((i, j), k);
        k
    }

    pub fn inv(&mut self, i: usize) -> usize {
        if let Some(&k) = self.inverses.get(&i) {
            return k;
        }
        let node = inverse_action(&self.nodes[i].record).expect("inverse");
        let k = self.add(node);
        self.inverses.insert(i, k);
        k
    }
}
