//! Invariant subalgebras and the induced partial action of a quotient group.
//!
//! `S^{α_H}` of a split algebra is spanned by the indicators of the
//! connected components of the graph `x ~ σ_h(x)`, `h ∈ H`. Those
//! components are the points on which `G/H` acts partially. The quotient
//! action is computed twice: through the globalization (`ψ_H`, `e_H`, and
//! `γ_{G/H}`), and directly from the closed formulas for `1̃_{gH}` and
//! `α_{gH}`. Both routes emit actions on the same block labels.

use std::sync::Arc;

use crate::envelope::{compute_e_h, globalize, psi_map, union_find_blocks};
use crate::error::{Error, Result};
use crate::galois::{galois_check, GaloisCertificate};
use crate::group::{quotient, QuotientData, Subgroup};
use crate::paction::{AlgElement, ExtensionRecord, PointSet, SetPartialAction};
use crate::ring::{kernel_basis, BaseRing, Matrix};

/// `S^{α_H}` as a partition of the basis into blocks.
///
/// Blocks are sorted and ordered by their minimal member; block `b` stands
/// for the idempotent `f_b = Σ_{x∈b} e_x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantAlgebra {
    points: usize,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl InvariantAlgebra {
    fn from_blocks(points: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort();
        let mut block_of = vec![usize::MAX; points];
        for (i, b) in blocks.iter().enumerate() {
            for &x in b {
                block_of[x] = i;
            }
        }
        Self {
            points,
            blocks,
            block_of,
        }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    /// Subset of `X` covered by a set of blocks.
    pub fn expand(&self, blocks: &PointSet) -> PointSet {
        PointSet::from_members(self.points, blocks.members().flat_map(|b| self.blocks[b].iter().copied()))
    }

    /// The set of blocks whose union is `set`, if `set` is such a union.
    pub fn contract(&self, set: &PointSet) -> Option<PointSet> {
        let chosen = PointSet::from_members(self.blocks.len(), set.members().map(|x| self.block_of[x]));
        (self.expand(&chosen) == *set).then_some(chosen)
    }

    /// `f_b` as an element of `S`.
    pub fn block_element(&self, ring: BaseRing, b: usize) -> AlgElement {
        AlgElement::indicator(ring, &PointSet::from_members(self.points, self.blocks[b].iter().copied()))
    }

    /// Reads an element of `S` that is a single `f_b`.
    pub fn as_block(&self, s: &AlgElement) -> Option<usize> {
        let set = s.as_indicator()?;
        let blocks = self.contract(&set)?;
        (blocks.len() == 1).then(|| blocks.members().next().expect("one block"))
    }

    fn labels(&self, a: &SetPartialAction) -> Vec<String> {
        self.blocks
            .iter()
            .map(|b| b.iter().map(|&x| a.label(x).to_string()).collect::<Vec<_>>().join("+"))
            .collect()
    }
}

/// Connected components of `x ~ σ_h(x)` for `h ∈ H`.
pub fn invariants(a: &SetPartialAction, h: &Subgroup) -> InvariantAlgebra {
    let n = a.points();
    let edges = h
        .members()
        .iter()
        .flat_map(|&g| (0..n).filter_map(move |x| a.map(g, x).map(|y| (x, y))));
    let roots = union_find_blocks(n, edges);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut index_of_root = vec![usize::MAX; n];
    for x in 0..n {
        let r = roots[x];
        if index_of_root[r] == usize::MAX {
            index_of_root[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[index_of_root[r]].push(x);
    }
    InvariantAlgebra::from_blocks(n, groups)
}

/// `S^{α_H}` solved as the kernel of the linear conditions
/// `α_h(s·1_{h⁻¹}) − s·1_h = 0`, read back as blocks.
pub fn invariants_via_kernel(a: &SetPartialAction, h: &Subgroup, ring: BaseRing) -> Result<InvariantAlgebra> {
    let n = a.points();
    let mut rows: Vec<Vec<i64>> = Vec::new();
    for &g in h.members() {
        // coefficient of e_y in α_g(s 1_{g⁻¹}) − s 1_g, for each y ∈ X_g
        let mut row_of = vec![None; n];
        for x in 0..n {
            if let Some(y) = a.map(g, x) {
                row_of[y] = Some(x);
            }
        }
        for (y, src) in row_of.iter().enumerate() {
            if let Some(x) = *src {
                let mut row = vec![0i64; n];
                row[x] += 1;
                row[y] -= 1;
                rows.push(row);
            }
        }
    }
    if rows.is_empty() {
        rows.push(vec![0; n]);
    }
    let m = Matrix::from_i64(ring, &rows)?;
    let kernel = kernel_basis(&m);
    let mut blocks = Vec::new();
    for v in kernel {
        let elem = AlgElement::from_coeffs(ring, v);
        let set = elem
            .as_indicator()
            .ok_or_else(|| Error::Inconsistent("kernel vector is not an idempotent".into()))?;
        blocks.push(set.to_vec());
    }
    let alg = InvariantAlgebra::from_blocks(n, blocks);
    if alg.block_of.contains(&usize::MAX) {
        return Err(Error::Inconsistent("kernel blocks do not cover the basis".into()));
    }
    Ok(alg)
}

/// The partial action `α_{G/H}` on the blocks of `S^{α_H}`.
#[derive(Clone, Debug)]
pub struct QuotientAction {
    pub quotient: QuotientData,
    pub base: InvariantAlgebra,
    /// Action of `quotient.table` on the blocks of `base`.
    pub action: SetPartialAction,
    /// `1̃_{gH}` per coset, as a set of blocks.
    pub tilde_idem: Vec<PointSet>,
}

impl PartialEq for QuotientAction {
    fn eq(&self, o: &Self) -> bool {
        self.quotient.cosets == o.quotient.cosets
            && self.base == o.base
            && self.action == o.action
            && self.tilde_idem == o.tilde_idem
    }
}

impl QuotientAction {
    /// `D̃_{gH}` for a coset, as a set of blocks.
    pub fn ideal(&self, coset: usize) -> PointSet {
        self.action.ideal(coset)
    }
}

fn check_quotient_inputs(a: &SetPartialAction, h: &Subgroup) -> Result<QuotientData> {
    a.validate().into_result()?;
    quotient(a.group(), h)
}

/// Definitional route: globalize, compute `e_H`, act by `γ_{gH}` and
/// multiply by `1_S`. Uses `1̃_{gH} = β_g(e_H)1_S` and
/// `α_{gH}(s) = β_g(ψ_H(s))1_S` on `D̃_{g⁻¹H}`.
pub fn quotient_partial_action(a: &SetPartialAction, h: &Subgroup) -> Result<QuotientAction> {
    let q = check_quotient_inputs(a, h)?;
    let ring = BaseRing::Rationals;
    let gl = globalize(a)?;
    let e_h = compute_e_h(&gl, h).e_h;
    let base = invariants(a, h);
    let mut tilde_idem = Vec::with_capacity(q.transversal.len());
    for &g in &q.transversal {
        let on_t = gl.beta_set(g, &e_h).intersection(&gl.unit_s());
        let on_s = PointSet::from_members(a.points(), gl.embed().iter().enumerate().filter(|(_, &y)| on_t.contains(y)).map(|(x, _)| x));
        let blocks = base
            .contract(&on_s)
            .ok_or_else(|| Error::Inconsistent("1̃_{gH} is not H-invariant".into()))?;
        tilde_idem.push(blocks);
    }
    let mut sigma = vec![vec![None; base.len()]; q.table.order()];
    for (c, &g) in q.transversal.iter().enumerate() {
        let inv_coset = q.coset_index(a.group().inv(g));
        for b in tilde_idem[inv_coset].members() {
            let s = base.block_element(ring, b);
            let image = gl.pull_back(&gl.beta_elem(g, &psi_map(&gl, h, &gl.embed_elem(&s))));
            let target = base
                .as_block(&image)
                .ok_or_else(|| Error::Inconsistent(format!("α_{{gH}} sends block {b} outside the blocks")))?;
            sigma[c][b] = Some(target);
        }
    }
    let action = SetPartialAction::new(Arc::new(q.table.clone()), base.len(), sigma)?.with_labels(base.labels(a));
    Ok(QuotientAction {
        quotient: q,
        base,
        action,
        tilde_idem,
    })
}

/// `1̃_{gH} = 1_g + Σ_{i=2}^m ∏_{j=2}^{i}(1_S − 1_{gh_{j−1}}) 1_{gh_i}`.
pub fn tilde_idempotent(a: &SetPartialAction, h: &Subgroup, g: usize) -> AlgElement {
    let ring = BaseRing::Rationals;
    let n = a.points();
    let grp = a.group();
    let one = AlgElement::one(ring, n);
    let unit = |k: usize| AlgElement::indicator(ring, &a.ideal(k));
    let hs = h.members();
    let mut acc = unit(g);
    for i in 1..hs.len() {
        let mut term = unit(grp.mul(g, hs[i]));
        for j in 1..=i {
            term = term.mul(&one.sub(&unit(grp.mul(g, hs[j - 1]))));
        }
        acc = acc.add(&term);
    }
    acc
}

/// `α_{gH}(x) = α_g(x1_{g⁻¹}) + Σ_{i=2}^m ∏_{j=1}^{i−1}(1_S − 1_{gh_j}) α_{gh_i}(x1_{(gh_i)⁻¹})`.
pub fn alpha_coset(a: &SetPartialAction, h: &Subgroup, g: usize, x: &AlgElement) -> AlgElement {
    let ring = x.ring();
    let n = a.points();
    let grp = a.group();
    let one = AlgElement::one(ring, n);
    let unit = |k: usize| AlgElement::indicator(ring, &a.ideal(k));
    let hs = h.members();
    let mut acc = a.act(g, x);
    for i in 1..hs.len() {
        let ghi = grp.mul(g, hs[i]);
        let mut term = a.act(ghi, x);
        for &hj in &hs[..i] {
            term = term.mul(&one.sub(&unit(grp.mul(g, hj))));
        }
        acc = acc.add(&term);
    }
    acc
}

/// Closed-formula route; no globalization is built.
pub fn quotient_partial_action_direct(a: &SetPartialAction, h: &Subgroup) -> Result<QuotientAction> {
    let q = check_quotient_inputs(a, h)?;
    let ring = BaseRing::Rationals;
    let base = invariants(a, h);
    let mut tilde_idem = Vec::with_capacity(q.transversal.len());
    for &g in &q.transversal {
        let set = tilde_idempotent(a, h, g)
            .as_indicator()
            .ok_or_else(|| Error::Inconsistent("1̃_{gH} is not an idempotent".into()))?;
        let blocks = base
            .contract(&set)
            .ok_or_else(|| Error::Inconsistent("1̃_{gH} is not H-invariant".into()))?;
        tilde_idem.push(blocks);
    }
    let mut sigma = vec![vec![None; base.len()]; q.table.order()];
    for (c, &g) in q.transversal.iter().enumerate() {
        let inv_coset = q.coset_index(a.group().inv(g));
        for b in tilde_idem[inv_coset].members() {
            let image = alpha_coset(a, h, g, &base.block_element(ring, b));
            let target = base
                .as_block(&image)
                .ok_or_else(|| Error::Inconsistent(format!("α_{{gH}} sends block {b} outside the blocks")))?;
            sigma[c][b] = Some(target);
        }
    }
    let action = SetPartialAction::new(Arc::new(q.table.clone()), base.len(), sigma)?.with_labels(base.labels(a));
    Ok(QuotientAction {
        quotient: q,
        base,
        action,
        tilde_idem,
    })
}

/// Both globality tests for `α_{G/H}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientGlobality {
    /// `β_{g_i}(1_S) (1_T − e_H) = 0` for every transversal element.
    pub annihilator_test: bool,
    /// `1̃_{gH} = 1_{S^{α_H}}` for every coset.
    pub tilde_test: bool,
    /// First coset (by transversal index) failing the tilde test.
    pub witness: Option<usize>,
}

impl QuotientGlobality {
    pub fn is_global(&self) -> bool {
        self.annihilator_test && self.tilde_test
    }

    pub fn agree(&self) -> bool {
        self.annihilator_test == self.tilde_test
    }
}

pub fn is_quotient_global(a: &SetPartialAction, h: &Subgroup) -> Result<QuotientGlobality> {
    let q = check_quotient_inputs(a, h)?;
    let gl = globalize(a)?;
    let e_h = compute_e_h(&gl, h).e_h;
    let unit = gl.unit_s();
    let annihilator_test = q
        .transversal
        .iter()
        .all(|&g| gl.beta_set(g, &unit).difference(&e_h).is_empty());
    let direct = quotient_partial_action_direct(a, h)?;
    let all = PointSet::full(direct.base.len());
    let witness = direct.tilde_idem.iter().position(|t| *t != all);
    Ok(QuotientGlobality {
        annihilator_test,
        tilde_test: witness.is_none(),
        witness,
    })
}

/// Outcome of transferring the Galois property to `S^{α_H}`.
#[derive(Clone, Debug)]
pub struct TransferReport {
    pub quotient: QuotientAction,
    pub certificate: GaloisCertificate,
    /// `(S^{α_H})^{α_{G/H}} = S^{α_G}`.
    pub invariants_match: bool,
}

/// Builds `α_{G/H}`, certifies it and compares invariants. Any failure is an
/// internal inconsistency.
pub fn galois_transfer_check(rec: &ExtensionRecord, h: &Subgroup) -> Result<TransferReport> {
    if !rec.is_galois() {
        return Err(Error::NotGalois);
    }
    let a = rec.action();
    let qa = quotient_partial_action(a, h)?;
    let certificate = galois_check(&qa.action, rec.ring())?;
    if !certificate.is_galois() {
        return Err(Error::TransferFailed(format!(
            "quotient by a subgroup of order {} is not partial Galois: {:?}",
            h.len(),
            certificate
        )));
    }
    let top = invariants(&qa.action, &Subgroup::whole(qa.action.group()));
    let lifted: Vec<PointSet> = top
        .blocks()
        .iter()
        .map(|bb| qa.base.expand(&PointSet::from_members(qa.base.len(), bb.iter().copied())))
        .collect();
    let direct: Vec<PointSet> = rec
        .invariants()
        .blocks()
        .iter()
        .map(|b| PointSet::from_members(a.points(), b.iter().copied()))
        .collect();
    let invariants_match = lifted == direct;
    if !invariants_match {
        return Err(Error::TransferFailed("(S^{α_H})^{α_{G/H}} differs from S^{α_G}".into()));
    }
    Ok(TransferReport {
        quotient: qa,
        certificate,
        invariants_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::group::subgroup_closure;

    fn names(a: &SetPartialAction, alg: &InvariantAlgebra) -> Vec<String> {
        alg.labels(a)
    }

    #[test]
    fn invariants_of_fixtures() {
        let a = fixtures::ex0();
        let h = subgroup_closure(a.group(), &[2]).unwrap();
        assert_eq!(names(&a, &invariants(&a, &h)), vec!["e1+e3", "e2"]);
        let c = fixtures::ec6r();
        let h = subgroup_closure(c.group(), &[3]).unwrap();
        assert_eq!(names(&c, &invariants(&c, &h)), vec!["e1", "e3+e6"]);
        assert_eq!(invariants(&a, &Subgroup::trivial()).len(), 3);
    }

    #[test]
    fn kernel_route_matches() {
        for a in [fixtures::ex0(), fixtures::ec6r(), fixtures::sec52()] {
            for h in crate::group::all_subgroups(a.group()) {
                for ring in [BaseRing::Rationals, BaseRing::PrimeField(3)] {
                    assert_eq!(invariants_via_kernel(&a, &h, ring).unwrap(), invariants(&a, &h));
                }
            }
        }
    }

    #[test]
    fn ec6r_quotient_matches_published_values() {
        let c = fixtures::ec6r();
        let h = subgroup_closure(c.group(), &[3]).unwrap();
        let qa = quotient_partial_action(&c, &h).unwrap();
        // blocks: 0 = e1, 1 = e3+e6
        assert_eq!(qa.tilde_idem[0].to_vec(), vec![0, 1]);
        assert_eq!(qa.tilde_idem[1].to_vec(), vec![0]);
        assert_eq!(qa.tilde_idem[2].to_vec(), vec![1]);
        // α_{gH}(e3+e6) = e1, α_{g²H}(e1) = e3+e6
        assert_eq!(qa.action.map(1, 1), Some(0));
        assert_eq!(qa.action.map(1, 0), None);
        assert_eq!(qa.action.map(2, 0), Some(1));
        assert!(qa.action.validate().is_valid());
        assert_eq!(qa, quotient_partial_action_direct(&c, &h).unwrap());
    }

    #[test]
    fn ex0_quotient_is_global_swap() {
        let a = fixtures::ex0();
        let h = subgroup_closure(a.group(), &[2]).unwrap();
        let qa = quotient_partial_action(&a, &h).unwrap();
        assert!(qa.action.is_global());
        assert_eq!(qa.action.map(1, 0), Some(1));
        assert_eq!(qa, quotient_partial_action_direct(&a, &h).unwrap());
        let g = is_quotient_global(&a, &h).unwrap();
        assert!(g.is_global() && g.agree());
        let c = fixtures::ec6r();
        let g = is_quotient_global(&c, &subgroup_closure(c.group(), &[3]).unwrap()).unwrap();
        assert!(!g.annihilator_test && !g.tilde_test);
        assert_eq!(g.witness, Some(1));
    }

    #[test]
    fn trivial_and_whole_subgroups() {
        let a = fixtures::ex0();
        let triv = quotient_partial_action_direct(&a, &Subgroup::trivial()).unwrap();
        assert_eq!(triv.action.maps(), a.maps());
        for g in a.group().elements() {
            assert_eq!(tilde_idempotent(&a, &Subgroup::trivial(), g).as_indicator().unwrap(), a.ideal(g));
        }
        let whole = Subgroup::whole(a.group());
        let qa = quotient_partial_action(&a, &whole).unwrap();
        assert_eq!(qa.action.group().order(), 1);
        assert_eq!(qa.base.len(), 1);
        assert!(is_quotient_global(&a, &whole).unwrap().is_global());
    }

    #[test]
    fn non_normal_subgroup_is_rejected() {
        let s3 = Arc::new(crate::group::symmetric_group_s3());
        let b = SetPartialAction::global(s3.clone(), 6, |g, x| s3.mul(g, x)).unwrap();
        let t = subgroup_closure(&s3, &[3]).unwrap();
        assert_eq!(quotient_partial_action(&b, &t).unwrap_err(), Error::NotNormal);
        assert_eq!(quotient_partial_action_direct(&b, &t).unwrap_err(), Error::NotNormal);
        assert_eq!(is_quotient_global(&b, &t).unwrap_err(), Error::NotNormal);
        let a3 = subgroup_closure(&s3, &[1]).unwrap();
        let qa = quotient_partial_action(&b, &a3).unwrap();
        assert_eq!(qa, quotient_partial_action_direct(&b, &a3).unwrap());
        assert!(qa.action.is_global());
    }
}
