//! Enveloping actions, the map `ψ_H`, the idempotents `e_i` and `e_H`, and
//! the structures induced on `T^{β_H}`.
//!
//! The globalization of `(X, σ)` is built on `Y = (G × X)/~` where
//! `(g, x) ~ (h, y)` iff `x ∈ X_{g⁻¹h}` and `σ_{h⁻¹g}(x) = y`; the class
//! `[g, x]` stands for `β_g(e_x)`. Classes are numbered by their minimal
//! `(g, x)` pair, so `embed(x) = [1, x] = x`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{quotient, GroupTable, QuotientData, Subgroup};
use crate::paction::{AlgElement, PointSet, SetPartialAction};
use crate::quotient::invariants;
use crate::ring::BaseRing;

/// A global action on `Y` with an embedding of the partial action's points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Globalization {
    global: SetPartialAction,
    embed: Vec<usize>,
    partial: SetPartialAction,
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self { parent: (0..n).collect() }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Keeps the smaller index as the root.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }
}

pub(crate) fn union_find_blocks(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Vec<usize> {
    let mut uf = UnionFind::new(n);
    for (a, b) in edges {
        uf.union(a, b);
    }
    (0..n).map(|x| uf.find(x)).collect()
}

/// Enveloping action of a valid partial action.
pub fn globalize(a: &SetPartialAction) -> Result<Globalization> {
    a.validate().into_result()?;
    let g = a.group();
    let n = a.points();
    let size = g.order() * n;
    let mut edges = Vec::new();
    for h in g.elements() {
        for x in 0..n {
            for k in g.elements() {
                if let Some(y) = a.map(k, x) {
                    // [h, x] = [h k⁻¹, σ_k(x)]
                    let h2 = g.mul(h, g.inv(k));
                    edges.push((h * n + x, h2 * n + y));
                }
            }
        }
    }
    let roots = union_find_blocks(size, edges);
    let mut class_of_root = vec![usize::MAX; size];
    let mut reps = Vec::new();
    for p in 0..size {
        let r = roots[p];
        if class_of_root[r] == usize::MAX {
            class_of_root[r] = reps.len();
            reps.push(p);
        }
    }
    let class = |p: usize| class_of_root[roots[p]];
    let ysize = reps.len();
    let mut sigma = vec![vec![None; ysize]; g.order()];
    for b in g.elements() {
        for (c, &p) in reps.iter().enumerate() {
            let (h, x) = (p / n, p % n);
            sigma[b][c] = Some(class(g.mul(b, h) * n + x));
        }
    }
    let embed: Vec<usize> = (0..n).map(class).collect();
    debug_assert!(embed.iter().enumerate().all(|(i, &c)| i == c));
    let numbered = a.labels().iter().enumerate().all(|(i, l)| *l == format!("e{}", i + 1));
    let labels = reps
        .iter()
        .enumerate()
        .map(|(c, &p)| {
            if c < n {
                a.label(c).to_string()
            } else if numbered {
                format!("e{}", c + 1)
            } else {
                format!("{}·{}", g.name(p / n), a.label(p % n))
            }
        })
        .collect();
    let global = SetPartialAction::new(a.group_arc().clone(), ysize, sigma)?.with_labels(labels);
    let gl = Globalization {
        global,
        embed,
        partial: a.clone(),
    };
    let failures = gl.verify();
    if !failures.is_empty() {
        return Err(Error::Inconsistent(failures.join("; ")));
    }
    Ok(gl)
}

impl Globalization {
    /// Wraps a known global action and embedding after checking (G1)–(G4).
    pub fn from_global(global: SetPartialAction, embed: Vec<usize>, partial: SetPartialAction) -> Result<Self> {
        if *global.group() != *partial.group() {
            return Err(Error::GroupMismatch);
        }
        if !global.is_global() {
            return Err(Error::NotGlobal);
        }
        if embed.len() != partial.points() {
            return Err(Error::DimensionMismatch("embedding length".into()));
        }
        if let Some(&y) = embed.iter().find(|&&y| y >= global.points()) {
            return Err(Error::IndexOutOfRange {
                index: y,
                size: global.points(),
            });
        }
        let gl = Self { global, embed, partial };
        let failures = gl.verify();
        if !failures.is_empty() {
            return Err(Error::ValidationFailed(failures.join("; ")));
        }
        Ok(gl)
    }

    /// The global action `β` on `Y`.
    pub fn global(&self) -> &SetPartialAction {
        &self.global
    }

    pub fn partial(&self) -> &SetPartialAction {
        &self.partial
    }

    pub fn embed(&self) -> &[usize] {
        &self.embed
    }

    pub fn size(&self) -> usize {
        self.global.points()
    }

    pub fn group(&self) -> &GroupTable {
        self.global.group()
    }

    /// `1_S` as a subset of `Y`.
    pub fn unit_s(&self) -> PointSet {
        PointSet::from_members(self.size(), self.embed.iter().copied())
    }

    /// `β_g(set)`.
    pub fn beta_set(&self, g: usize, set: &PointSet) -> PointSet {
        PointSet::from_members(self.size(), set.members().map(|y| self.beta(g, y)))
    }

    #[inline]
    pub fn beta(&self, g: usize, y: usize) -> usize {
        self.global.map(g, y).expect("global action")
    }

    pub fn beta_elem(&self, g: usize, t: &AlgElement) -> AlgElement {
        self.global.act(g, t)
    }

    /// Pushes an element of `S` into `T`.
    pub fn embed_elem(&self, s: &AlgElement) -> AlgElement {
        let mut t = AlgElement::zero(s.ring(), self.size());
        for (x, &y) in self.embed.iter().enumerate() {
            t.set(y, s.coeff(x).clone());
        }
        t
    }

    /// Multiplication by `1_S`, read back on the points of `S`.
    pub fn pull_back(&self, t: &AlgElement) -> AlgElement {
        let coeffs = self.embed.iter().map(|&y| t.coeff(y).clone()).collect();
        AlgElement::from_coeffs(t.ring(), coeffs)
    }

    /// Lists every failed globalization axiom; empty when (G1)–(G4) hold.
    pub fn verify(&self) -> Vec<String> {
        let mut out = Vec::new();
        let g = self.group();
        let mut seen = PointSet::empty(self.size());
        for &y in &self.embed {
            if seen.contains(y) {
                out.push(format!("(G1) embedding is not injective at {y}"));
            }
            seen.insert(y);
        }
        let unit = self.unit_s();
        for a in g.elements() {
            let lhs = PointSet::from_members(self.size(), self.partial.ideal(a).members().map(|x| self.embed[x]));
            let rhs = unit.intersection(&self.beta_set(a, &unit));
            if lhs != rhs {
                out.push(format!("(G2) fails at {}", g.name(a)));
            }
            for x in 0..self.partial.points() {
                if let Some(y) = self.partial.map(a, x) {
                    if self.beta(a, self.embed[x]) != self.embed[y] {
                        out.push(format!("(G3) fails at ({}, {x})", g.name(a)));
                    }
                }
            }
        }
        let span = g
            .elements()
            .fold(PointSet::empty(self.size()), |acc, a| acc.union(&self.beta_set(a, &unit)));
        if span != PointSet::full(self.size()) {
            out.push("(G4) the translates of S do not cover T".into());
        }
        out
    }
}

/// The idempotents `e_i` and `e_H = ψ_H(1_S)` for a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiData {
    /// `h_1 = 1, h_2, …, h_m` in index order.
    pub members: Vec<usize>,
    pub e_list: Vec<PointSet>,
    pub e_h: PointSet,
}

/// `e_1 = 1_S`, `e_i = (1_T − 1_S)(1_T − β_{h_2}(1_S))⋯(1_T − β_{h_{i−1}}(1_S)) β_{h_i}(1_S)`
/// for the given enumeration of `H` (which must start with the identity).
pub fn idempotents_e(gl: &Globalization, order: &[usize]) -> Vec<PointSet> {
    assert_eq!(order.first(), Some(&0), "enumeration must start with the identity");
    let unit = gl.unit_s();
    let mut out = vec![unit.clone()];
    let mut prefix = unit.complement();
    for &h in &order[1..] {
        let bh = gl.beta_set(h, &unit);
        out.push(prefix.intersection(&bh));
        prefix = prefix.difference(&bh);
    }
    out
}

/// `ψ_H(t) = Σ_i β_{h_i}(t) e_i` for an explicit enumeration of `H`.
pub fn psi_map_ordered(gl: &Globalization, order: &[usize], t: &AlgElement) -> AlgElement {
    let es = idempotents_e(gl, order);
    order
        .iter()
        .zip(&es)
        .fold(AlgElement::zero(t.ring(), gl.size()), |acc, (&h, e)| {
            acc.add(&gl.beta_elem(h, t).restrict(e))
        })
}

/// `ψ_H` with `H` enumerated in index order.
pub fn psi_map(gl: &Globalization, h: &Subgroup, t: &AlgElement) -> AlgElement {
    psi_map_ordered(gl, h.members(), t)
}

/// Inclusion–exclusion form of `ψ_H`, summing signed products of the
/// `β_{h_i}(1_S)` over nonempty index subsets. Exponential in `|H|`; used to
/// cross-check [`psi_map`] on small subgroups.
pub fn psi_map_inclusion_exclusion(gl: &Globalization, h: &Subgroup, t: &AlgElement) -> AlgElement {
    let ring = t.ring();
    let m = h.len();
    assert!(m <= 16, "inclusion-exclusion is only meant for small subgroups");
    let unit = gl.unit_s();
    let translates: Vec<AlgElement> = h
        .members()
        .iter()
        .map(|&x| AlgElement::indicator(ring, &gl.beta_set(x, &unit)))
        .collect();
    let mut acc = AlgElement::zero(ring, gl.size());
    for mask in 1u32..(1 << m) {
        let idx: Vec<usize> = (0..m).filter(|i| mask & (1 << i) != 0).collect();
        let last = *idx.last().expect("nonempty");
        let mut term = gl.beta_elem(h.members()[last], t);
        for &i in &idx {
            term = term.mul(&translates[i]);
        }
        if idx.len() % 2 == 1 {
            acc = acc.add(&term);
        } else {
            acc = acc.sub(&term);
        }
    }
    acc
}

/// `e_H = ψ_H(1_S)` and the `e_i`.
pub fn compute_e_h(gl: &Globalization, h: &Subgroup) -> PsiData {
    let ring = BaseRing::Rationals;
    let one_s = AlgElement::indicator(ring, &gl.unit_s());
    let e_h = psi_map(gl, h, &one_s)
        .as_indicator()
        .expect("ψ_H(1_S) is an idempotent");
    PsiData {
        members: h.members().to_vec(),
        e_list: idempotents_e(gl, h.members()),
        e_h,
    }
}

/// `1_T − ∏_{h∈H}(1_T − β_h(1_S))`.
pub fn e_h_product_formula(gl: &Globalization, h: &Subgroup) -> PointSet {
    let unit = gl.unit_s();
    let all = PointSet::full(gl.size());
    let prod = h
        .members()
        .iter()
        .fold(all.clone(), |acc, &x| acc.intersection(&gl.beta_set(x, &unit).complement()));
    all.difference(&prod)
}

/// Orbits of `H` on `Y`; `T^{β_H}` is spanned by their indicators.
pub fn beta_invariants(gl: &Globalization, h: &Subgroup) -> Vec<Vec<usize>> {
    invariants(&gl.global, h).blocks().to_vec()
}

/// A partial or global action of `G/H` on a family of blocks of `Y`.
#[derive(Clone, Debug)]
pub struct BlockAction {
    pub quotient: QuotientData,
    /// Blocks of `Y` acting as points, ordered by minimal member.
    pub blocks: Vec<Vec<usize>>,
    pub action: SetPartialAction,
}

fn block_labels(gl: &Globalization, blocks: &[Vec<usize>]) -> Vec<String> {
    blocks
        .iter()
        .map(|b| {
            b.iter()
                .map(|&y| gl.global.label(y).to_string())
                .collect::<Vec<_>>()
                .join("+")
        })
        .collect()
}

/// `β_{G/H}` on the `β_H`-invariant blocks.
pub fn quotient_global_action(gl: &Globalization, h: &Subgroup) -> Result<BlockAction> {
    let q = quotient(gl.group(), h)?;
    let blocks = beta_invariants(gl, h);
    let action = act_on_blocks(gl, &q, &blocks, |_| None)?;
    Ok(BlockAction { quotient: q, blocks, action })
}

/// `γ_{G/H}` on the blocks of `T^{β_H}` inside `e_H`, with domains
/// `D_{gH} = T^{β_H} e_{gH}`, `e_{gH} = e_H β_g(e_H)`, and `γ_{gH} = β_g`.
pub fn gamma_restricted(gl: &Globalization, h: &Subgroup) -> Result<BlockAction> {
    let q = quotient(gl.group(), h)?;
    let e_h = compute_e_h(gl, h).e_h;
    let blocks: Vec<Vec<usize>> = beta_invariants(gl, h)
        .into_iter()
        .filter(|b| b.iter().all(|&y| e_h.contains(y)))
        .collect();
    let covered = PointSet::from_members(gl.size(), blocks.iter().flatten().copied());
    if covered != e_h {
        return Err(Error::Inconsistent("e_H is not a union of β_H-orbits".into()));
    }
    let action = act_on_blocks(gl, &q, &blocks, |g| {
        // domain of γ_{gH} is e_{g⁻¹H} = e_H β_{g⁻¹}(e_H)
        Some(e_h.intersection(&gl.beta_set(gl.group().inv(g), &e_h)))
    })?;
    Ok(BlockAction { quotient: q, blocks, action })
}

/// Quotient action `gH ↦ β_g` on `blocks`, defined on the blocks contained
/// in `domain(g)` where `g` runs over the transversal.
fn act_on_blocks(
    gl: &Globalization,
    q: &QuotientData,
    blocks: &[Vec<usize>],
    domain: impl Fn(usize) -> Option<PointSet>,
) -> Result<SetPartialAction> {
    let size = gl.size();
    let mut block_of = vec![usize::MAX; size];
    for (i, b) in blocks.iter().enumerate() {
        for &y in b {
            block_of[y] = i;
        }
    }
    let mut sigma = vec![vec![None; blocks.len()]; q.table.order()];
    for (c, &g) in q.transversal.iter().enumerate() {
        let dom = domain(g).unwrap_or_else(|| PointSet::full(size));
        for (i, b) in blocks.iter().enumerate() {
            if !b.iter().all(|&y| dom.contains(y)) {
                continue;
            }
            let image: Vec<usize> = b.iter().map(|&y| gl.beta(g, y)).collect();
            let target = block_of[image[0]];
            if target == usize::MAX {
                return Err(Error::Inconsistent("β_g leaves the block family".into()));
            }
            let mut sorted = image.clone();
            sorted.sort_unstable();
            if sorted != blocks[target] {
                return Err(Error::Inconsistent("β_g does not map blocks onto blocks".into()));
            }
            sigma[c][i] = Some(target);
        }
    }
    let action = SetPartialAction::new(Arc::new(q.table.clone()), blocks.len(), sigma)?
        .with_labels(block_labels(gl, blocks));
    Ok(action)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::group::subgroup_closure;

    fn q() -> BaseRing {
        BaseRing::Rationals
    }

    fn labels_of(gl: &Globalization, s: &PointSet) -> String {
        s.members()
            .map(|y| gl.global().label(y).to_string())
            .collect::<Vec<_>>()
            .join("+")
    }

    #[test]
    fn ex0_globalization_is_the_four_cycle() {
        let gl = globalize(&fixtures::ex0()).unwrap();
        assert_eq!(gl.size(), 4);
        assert_eq!(gl.embed(), &[0, 1, 2]);
        // β_g(e_j) = e_{j-1 mod 4}
        for j in 0..4 {
            assert_eq!(gl.beta(1, j), (j + 3) % 4);
        }
        assert_eq!(gl.global().label(3), "e4");
        assert!(gl.verify().is_empty());
    }

    #[test]
    fn psi_on_ex0() {
        let gl = globalize(&fixtures::ex0()).unwrap();
        let h = subgroup_closure(gl.group(), &[2]).unwrap();
        let t = AlgElement::from_i64(q(), &[2, 3, 5, 7]);
        // a e1 + b(e2+e4) + c e3
        assert_eq!(psi_map(&gl, &h, &t), AlgElement::from_i64(q(), &[2, 3, 5, 3]));
        assert_eq!(psi_map_inclusion_exclusion(&gl, &h, &t), psi_map(&gl, &h, &t));
        let data = compute_e_h(&gl, &h);
        assert_eq!(data.e_h, PointSet::full(4));
        // ψ_{1}(t) = t·1_S
        assert_eq!(psi_map(&gl, &Subgroup::trivial(), &t), AlgElement::from_i64(q(), &[2, 3, 5, 0]));
    }

    #[test]
    fn ec6r_e_h() {
        let gl = fixtures::ec6r_globalization();
        let h = subgroup_closure(gl.group(), &[3]).unwrap();
        let data = compute_e_h(&gl, &h);
        assert_eq!(labels_of(&gl, &data.e_h), "e1+e3+e4+e6");
        assert_eq!(data.e_h, e_h_product_formula(&gl, &h));
        let trivial = compute_e_h(&gl, &Subgroup::trivial());
        assert_eq!(trivial.e_h, gl.unit_s());
    }

    #[test]
    fn invariant_blocks_and_quotient_action() {
        let gl = fixtures::ec6r_globalization();
        let h = subgroup_closure(gl.group(), &[3]).unwrap();
        let blocks = beta_invariants(&gl, &h);
        let named: Vec<String> = blocks
            .iter()
            .map(|b| labels_of(&gl, &PointSet::from_members(6, b.iter().copied())))
            .collect();
        assert_eq!(named, vec!["e1+e4", "e2+e5", "e3+e6"]);
        assert_eq!(beta_invariants(&gl, &Subgroup::trivial()).len(), 6);
        assert_eq!(beta_invariants(&gl, &Subgroup::whole(gl.group())).len(), 1);

        let ex0 = globalize(&fixtures::ex0()).unwrap();
        let h = subgroup_closure(ex0.group(), &[2]).unwrap();
        let qa = quotient_global_action(&ex0, &h).unwrap();
        assert_eq!(qa.blocks, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(qa.action.map(1, 0), Some(1));
        assert_eq!(qa.action.map(1, 1), Some(0));
        let whole = quotient_global_action(&ex0, &Subgroup::whole(ex0.group())).unwrap();
        assert_eq!(whole.action.points(), 1);
        let ident = quotient_global_action(&ex0, &Subgroup::trivial()).unwrap();
        assert_eq!(ident.action.maps(), ex0.global().maps());
    }

    #[test]
    fn gamma_on_fixtures() {
        let ex0 = globalize(&fixtures::ex0()).unwrap();
        let h = subgroup_closure(ex0.group(), &[2]).unwrap();
        let gamma = gamma_restricted(&ex0, &h).unwrap();
        assert!(gamma.action.is_global());

        let gl = fixtures::ec6r_globalization();
        let h = subgroup_closure(gl.group(), &[3]).unwrap();
        let gamma = gamma_restricted(&gl, &h).unwrap();
        assert!(gamma.action.validate().is_valid());
        assert_eq!(gamma.action.points(), 2);
        assert!(!gamma.action.is_global());
        // e_{1·H} = e_H: the identity coset acts on every block.
        assert!(gamma.action.domain(0) == PointSet::full(2));
    }

    #[test]
    fn from_global_rejects_broken_embeddings() {
        let b = fixtures::c6_shift();
        let a = fixtures::ec6r();
        let ok = Globalization::from_global(b.clone(), vec![0, 2, 5], a.clone());
        assert!(ok.is_ok());
        assert!(Globalization::from_global(b, vec![0, 1, 5], a).is_err());
    }

    #[test]
    fn global_action_globalizes_to_itself() {
        let b = fixtures::c6_shift();
        let gl = globalize(&b).unwrap();
        assert_eq!(gl.size(), 6);
        assert_eq!(gl.global().maps(), b.maps());
    }
}
