//! Partial actions of a finite group on a split algebra `S = ⊕_{x∈X} R e_x`.
//!
//! Over a connected base ring an ideal of `S` generated by an idempotent is
//! spanned by a subset of the basis, and an algebra isomorphism between two
//! such ideals is a bijection of the supporting subsets. A unital partial
//! action is therefore a family of partial bijections `σ_g : X_{g⁻¹} → X_g`
//! of the finite index set `X`.

use std::fmt;
use std::sync::Arc;

use crate::envelope::{globalize, Globalization};
use crate::error::{Error, Result};
use crate::galois::{galois_check, GaloisCertificate};
use crate::group::{GroupTable, Subgroup};
use crate::quotient::{invariants, InvariantAlgebra};
use crate::ring::{BaseRing, Scalar};

/// A subset of a finite index set, stored as a membership mask.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PointSet {
    bits: Vec<bool>,
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.members()).finish()
    }
}

impl PointSet {
    pub fn empty(n: usize) -> Self {
        Self { bits: vec![false; n] }
    }

    pub fn full(n: usize) -> Self {
        Self { bits: vec![true; n] }
    }

    pub fn from_members(n: usize, members: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(n);
        for x in members {
            s.bits[x] = true;
        }
        s
    }

    /// Size of the ambient index set.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.bits[x]
    }

    pub fn insert(&mut self, x: usize) {
        self.bits[x] = true;
    }

    pub fn len(&self) -> usize {
        self.bits.iter().filter(|b| **b).count()
    }

    pub fn is_empty(&self) -> bool {
        !self.bits.iter().any(|b| *b)
    }

    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().filter(|(_, b)| **b).map(|(i, _)| i)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.members().collect()
    }

    pub fn union(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a || b)
    }

    pub fn intersection(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a && b)
    }

    pub fn difference(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a && !b)
    }

    pub fn complement(&self) -> Self {
        Self {
            bits: self.bits.iter().map(|b| !b).collect(),
        }
    }

    pub fn is_subset(&self, o: &Self) -> bool {
        self.bits.iter().zip(&o.bits).all(|(a, b)| !a || *b)
    }

    fn zip(&self, o: &Self, f: impl Fn(bool, bool) -> bool) -> Self {
        assert_eq!(self.bits.len(), o.bits.len(), "point sets over different universes");
        Self {
            bits: self.bits.iter().zip(&o.bits).map(|(a, b)| f(*a, *b)).collect(),
        }
    }
}

/// Element of `S = ⊕ R e_x` as a dense coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct AlgElement {
    ring: BaseRing,
    coeffs: Vec<Scalar>,
}

impl AlgElement {
    pub fn zero(ring: BaseRing, n: usize) -> Self {
        Self {
            ring,
            coeffs: vec![ring.zero(); n],
        }
    }

    /// `1_S`.
    pub fn one(ring: BaseRing, n: usize) -> Self {
        Self {
            ring,
            coeffs: vec![ring.one(); n],
        }
    }

    pub fn basis(ring: BaseRing, n: usize, x: usize) -> Self {
        let mut e = Self::zero(ring, n);
        e.coeffs[x] = ring.one();
        e
    }

    /// The idempotent `Σ_{x∈set} e_x`.
    pub fn indicator(ring: BaseRing, set: &PointSet) -> Self {
        Self {
            ring,
            coeffs: set
                .bits
                .iter()
                .map(|&b| if b { ring.one() } else { ring.zero() })
                .collect(),
        }
    }

    pub fn from_coeffs(ring: BaseRing, coeffs: Vec<Scalar>) -> Self {
        debug_assert!(coeffs.iter().all(|c| c.ring() == ring));
        Self { ring, coeffs }
    }

    pub fn from_i64(ring: BaseRing, values: &[i64]) -> Self {
        Self {
            ring,
            coeffs: values.iter().map(|&v| ring.from_i64(v)).collect(),
        }
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, x: usize) -> &Scalar {
        &self.coeffs[x]
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn set(&mut self, x: usize, v: Scalar) {
        self.coeffs[x] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Scalar::is_zero)
    }

    pub fn support(&self) -> PointSet {
        PointSet {
            bits: self.coeffs.iter().map(|c| !c.is_zero()).collect(),
        }
    }

    /// The subset whose indicator this is, if the element is an idempotent.
    pub fn as_indicator(&self) -> Option<PointSet> {
        if self.coeffs.iter().all(|c| c.is_zero() || c.is_one()) {
            Some(self.support())
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.len(), o.len());
        Self {
            ring: self.ring,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.len(), o.len());
        Self {
            ring: self.ring,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    /// Componentwise product.
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.len(), o.len());
        Self {
            ring: self.ring,
            coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.mul(b)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        Self {
            ring: self.ring,
            coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect(),
        }
    }

    /// Multiplication by the idempotent of `set`.
    pub fn restrict(&self, set: &PointSet) -> Self {
        Self {
            ring: self.ring,
            coeffs: self
                .coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if set.contains(i) { c.clone() } else { self.ring.zero() })
                .collect(),
        }
    }
}

/// A partial action of a group on a finite index set by partial bijections.
#[derive(Clone)]
pub struct SetPartialAction {
    group: Arc<GroupTable>,
    points: usize,
    sigma: Vec<Vec<Option<usize>>>,
    labels: Vec<String>,
}

impl PartialEq for SetPartialAction {
    /// Structural equality; point labels are presentation only.
    fn eq(&self, other: &Self) -> bool {
        self.points == other.points && self.sigma == other.sigma && *self.group == *other.group
    }
}

impl Eq for SetPartialAction {}

impl fmt::Debug for SetPartialAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut d = f.debug_struct("SetPartialAction");
        d.field("points", &self.labels);
        for g in self.group.elements() {
            let pairs: Vec<String> = (0..self.points)
                .filter_map(|x| self.sigma[g][x].map(|y| format!("{}->{}", self.labels[x], self.labels[y])))
                .collect();
            d.field(self.group.name(g), &pairs);
        }
        d.finish()
    }
}

pub(crate) fn default_labels(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("e{i}")).collect()
}

impl SetPartialAction {
    /// `sigma[g][x] = Some(y)` means `x ∈ X_{g⁻¹}` and `σ_g(x) = y`.
    ///
    /// Only shapes and index ranges are checked here; the axioms are checked
    /// by [`SetPartialAction::validate`].
    pub fn new(group: Arc<GroupTable>, points: usize, sigma: Vec<Vec<Option<usize>>>) -> Result<Self> {
        if sigma.len() != group.order() {
            return Err(Error::DimensionMismatch(format!(
                "{} maps for a group of order {}",
                sigma.len(),
                group.order()
            )));
        }
        for row in &sigma {
            if row.len() != points {
                return Err(Error::DimensionMismatch(format!(
                    "map of length {} on {points} points",
                    row.len()
                )));
            }
            if let Some(y) = row.iter().flatten().find(|&&y| y >= points) {
                return Err(Error::IndexOutOfRange { index: *y, size: points });
            }
        }
        Ok(Self {
            group,
            points,
            sigma,
            labels: default_labels(points),
        })
    }

    /// Global action from `act(g, x)`.
    pub fn global(group: Arc<GroupTable>, points: usize, act: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let sigma = group
            .elements()
            .map(|g| (0..points).map(|x| Some(act(g, x))).collect())
            .collect();
        Self::new(group, points, sigma)
    }

    /// The one-point algebra `R` with `S_g = 0` for every `g ≠ 1`.
    pub fn base_ring_action(group: Arc<GroupTable>) -> Self {
        let sigma = group
            .elements()
            .map(|g| vec![if g == 0 { Some(0) } else { None }])
            .collect();
        Self::new(group, 1, sigma).expect("well-formed")
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.points, "one label per point");
        self.labels = labels;
        self
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<GroupTable> {
        &self.group
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    /// `σ_g(x)` when `x ∈ X_{g⁻¹}`.
    #[inline]
    pub fn map(&self, g: usize, x: usize) -> Option<usize> {
        self.sigma[g][x]
    }

    pub fn maps(&self) -> &[Vec<Option<usize>>] {
        &self.sigma
    }

    /// `X_{g⁻¹}`, the domain of `σ_g`.
    pub fn domain(&self, g: usize) -> PointSet {
        PointSet::from_members(self.points, (0..self.points).filter(|&x| self.sigma[g][x].is_some()))
    }

    /// `X_g`, the support of `1_g`.
    pub fn ideal(&self, g: usize) -> PointSet {
        PointSet::from_members(self.points, self.sigma[g].iter().flatten().copied())
    }

    pub fn is_global(&self) -> bool {
        self.sigma.iter().all(|row| row.iter().all(Option::is_some))
    }

    /// Checks (P1)–(P4); an empty report means the action is valid.
    pub fn validate(&self) -> ValidationReport {
        let g = &*self.group;
        let n = self.points;
        let mut violations = Vec::new();
        // (P1): each σ_g is a bijection X_{g⁻¹} → X_g.
        for a in g.elements() {
            let mut seen = vec![None; n];
            for x in 0..n {
                if let Some(y) = self.sigma[a][x] {
                    if let Some(prev) = seen[y] {
                        violations.push(Violation {
                            axiom: Axiom::P1,
                            g: a,
                            h: None,
                            x: Some(x),
                            detail: format!("σ_{} is not injective: {prev} and {x} map to {y}", g.name(a)),
                        });
                    }
                    seen[y] = Some(x);
                }
            }
        }
        // (P2)
        for x in 0..n {
            if self.sigma[0][x] != Some(x) {
                violations.push(Violation {
                    axiom: Axiom::P2,
                    g: 0,
                    h: None,
                    x: Some(x),
                    detail: format!("σ_1 does not fix point {x}"),
                });
            }
        }
        let ideals: Vec<PointSet> = g.elements().map(|a| self.ideal(a)).collect();
        let domains: Vec<PointSet> = g.elements().map(|a| self.domain(a)).collect();
        for a in g.elements() {
            for b in g.elements() {
                let ab = g.mul(a, b);
                // (P3): σ_a(X_{a⁻¹} ∩ X_b) = X_a ∩ X_{ab}.
                let source = domains[a].intersection(&ideals[b]);
                let image = PointSet::from_members(n, source.members().filter_map(|x| self.sigma[a][x]));
                let target = ideals[a].intersection(&ideals[ab]);
                if image != target {
                    let x = image
                        .difference(&target)
                        .union(&target.difference(&image))
                        .members()
                        .next();
                    violations.push(Violation {
                        axiom: Axiom::P3,
                        g: a,
                        h: Some(b),
                        x,
                        detail: format!(
                            "σ_{}(X_{{{}⁻¹}} ∩ X_{}) ≠ X_{} ∩ X_{}",
                            g.name(a),
                            g.name(a),
                            g.name(b),
                            g.name(a),
                            g.name(ab)
                        ),
                    });
                }
                // (P4): σ_a σ_b = σ_{ab} wherever the left side is defined.
                for x in 0..n {
                    if let Some(y) = self.sigma[b][x] {
                        if let Some(z) = self.sigma[a][y] {
                            if self.sigma[ab][x] != Some(z) {
                                violations.push(Violation {
                                    axiom: Axiom::P4,
                                    g: a,
                                    h: Some(b),
                                    x: Some(x),
                                    detail: format!(
                                        "σ_{}σ_{}({x}) = {z} but σ_{}({x}) = {:?}",
                                        g.name(a),
                                        g.name(b),
                                        g.name(ab),
                                        self.sigma[ab][x]
                                    ),
                                });
                            }
                        }
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// `α_g(s·1_{g⁻¹})`.
    pub fn act(&self, g: usize, s: &AlgElement) -> AlgElement {
        assert_eq!(s.len(), self.points);
        let mut out = AlgElement::zero(s.ring(), self.points);
        for x in 0..self.points {
            if let Some(y) = self.sigma[g][x] {
                out.coeffs[y] = s.coeffs[x].clone();
            }
        }
        out
    }

    /// `tr(s) = Σ_g α_g(s·1_{g⁻¹})`.
    pub fn trace(&self, s: &AlgElement) -> AlgElement {
        self.group
            .elements()
            .fold(AlgElement::zero(s.ring(), self.points), |acc, g| acc.add(&self.act(g, s)))
    }

    /// The partial action of `H` obtained by restriction, over `H`'s own
    /// table (members in index order).
    pub fn restrict_to_subgroup(&self, h: &Subgroup) -> SetPartialAction {
        let table = Arc::new(h.table(&self.group));
        let sigma = h.members().iter().map(|&g| self.sigma[g].clone()).collect();
        Self {
            group: table,
            points: self.points,
            sigma,
            labels: self.labels.clone(),
        }
    }

    /// `α*_g = α_{g⁻¹}`.
    pub fn inverse_action(&self) -> SetPartialAction {
        let sigma = self
            .group
            .elements()
            .map(|g| self.sigma[self.group.inv(g)].clone())
            .collect();
        Self {
            group: self.group.clone(),
            points: self.points,
            sigma,
            labels: self.labels.clone(),
        }
    }

    /// Same action with the group table replaced by an equal table (e.g. one
    /// with different element names).
    pub fn over_group(&self, group: Arc<GroupTable>) -> Result<SetPartialAction> {
        if *group != *self.group {
            return Err(Error::GroupMismatch);
        }
        Ok(Self {
            group,
            points: self.points,
            sigma: self.sigma.clone(),
            labels: self.labels.clone(),
        })
    }

    /// Transports the action along `perm`, which sends old point `x` to new
    /// point `perm[x]`.
    pub fn relabel(&self, perm: &[usize]) -> SetPartialAction {
        assert_eq!(perm.len(), self.points);
        let mut sigma = vec![vec![None; self.points]; self.group.order()];
        for g in self.group.elements() {
            for x in 0..self.points {
                if let Some(y) = self.sigma[g][x] {
                    sigma[g][perm[x]] = Some(perm[y]);
                }
            }
        }
        let mut labels = vec![String::new(); self.points];
        for x in 0..self.points {
            labels[perm[x]] = self.labels[x].clone();
        }
        Self {
            group: self.group.clone(),
            points: self.points,
            sigma,
            labels,
        }
    }

    /// Orbits of the whole group (connected components of the σ graph),
    /// each sorted, ordered by minimal member.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        invariants(self, &Subgroup::whole(&self.group)).blocks().to_vec()
    }

    /// Per-point signature `{g : x ∈ X_{g⁻¹}}` as a bit vector.
    pub fn signature(&self, x: usize) -> Vec<bool> {
        self.group.elements().map(|g| self.sigma[g][x].is_some()).collect()
    }
}

/// The partial action induced by a global action `b` on the subset `subset`
/// of its points: `X_g = S ∩ β_g(S)`, `σ_g = β_g` restricted.
///
/// Point `i` of the result is `subset[i]` (sorted ascending).
pub fn induce_from_global(b: &SetPartialAction, subset: &[usize]) -> Result<SetPartialAction> {
    if !b.is_global() {
        return Err(Error::NotGlobal);
    }
    let mut sub = subset.to_vec();
    sub.sort_unstable();
    sub.dedup();
    if let Some(&x) = sub.iter().find(|&&x| x >= b.points) {
        return Err(Error::IndexOutOfRange { index: x, size: b.points });
    }
    let pos = |y: usize| sub.binary_search(&y).ok();
    let sigma = b
        .group
        .elements()
        .map(|g| {
            sub.iter()
                .map(|&x| b.sigma[g][x].and_then(pos))
                .collect()
        })
        .collect();
    let labels = sub.iter().map(|&x| b.labels[x].clone()).collect();
    Ok(SetPartialAction {
        group: b.group.clone(),
        points: sub.len(),
        sigma,
        labels,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Axiom {
    P1,
    P2,
    P3,
    P4,
}

/// One violated axiom with a witnessing triple `(g, h, x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub g: usize,
    pub h: Option<usize>,
    pub x: Option<usize>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn into_result(self) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::ValidationFailed(format!("{:?}: {}", v.axiom, v.detail))),
        }
    }
}

/// A validated partial action over a base ring together with its
/// globalization, the invariant blocks under the whole group and the
/// Galois certificate.
#[derive(Clone, Debug)]
pub struct ExtensionRecord {
    action: SetPartialAction,
    ring: BaseRing,
    globalization: Globalization,
    invariants: InvariantAlgebra,
    certificate: GaloisCertificate,
}

impl ExtensionRecord {
    pub fn new(action: SetPartialAction, ring: BaseRing) -> Result<Self> {
        if action.points() == 0 {
            return Err(Error::EmptyAlgebra);
        }
        action.validate().into_result()?;
        let globalization = globalize(&action)?;
        let invariants = invariants(&action, &Subgroup::whole(action.group()));
        let certificate = galois_check(&action, ring)?;
        Ok(Self {
            action,
            ring,
            globalization,
            invariants,
            certificate,
        })
    }

    /// As [`ExtensionRecord::new`], failing unless the action is partial Galois.
    pub fn galois(action: SetPartialAction, ring: BaseRing) -> Result<Self> {
        let r = Self::new(action, ring)?;
        if !r.is_galois() {
            return Err(Error::NotGalois);
        }
        Ok(r)
    }

    pub fn action(&self) -> &SetPartialAction {
        &self.action
    }

    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn group(&self) -> &GroupTable {
        self.action.group()
    }

    pub fn globalization(&self) -> &Globalization {
        &self.globalization
    }

    pub fn invariants(&self) -> &InvariantAlgebra {
        &self.invariants
    }

    pub fn certificate(&self) -> &GaloisCertificate {
        &self.certificate
    }

    pub fn is_galois(&self) -> bool {
        self.certificate.is_galois()
    }

    /// Recomputes every cached value and compares.
    pub fn verify_caches(&self) -> Result<()> {
        let gl = globalize(&self.action)?;
        if gl != self.globalization {
            return Err(Error::Inconsistent("cached globalization differs".into()));
        }
        if invariants(&self.action, &Subgroup::whole(self.action.group())) != self.invariants {
            return Err(Error::Inconsistent("cached invariants differ".into()));
        }
        if galois_check(&self.action, self.ring)? != self.certificate {
            return Err(Error::Inconsistent("cached certificate differs".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::group::{build_cyclic_product, subgroup_closure};

    fn q() -> BaseRing {
        BaseRing::Rationals
    }

    #[test]
    fn ex0_is_valid_and_acts_as_published() {
        let a = fixtures::ex0();
        assert!(a.validate().is_valid());
        // α_g(a e2 + b e3) = a e1 + b e2 with a = 5, b = 7.
        let s = AlgElement::from_i64(q(), &[0, 5, 7]);
        assert_eq!(a.act(1, &s), AlgElement::from_i64(q(), &[5, 7, 0]));
        let t = AlgElement::from_i64(q(), &[2, 3, 4]);
        assert_eq!(a.act(0, &t), t);
        assert_eq!(a.ideal(1).to_vec(), vec![0, 1]);
        assert_eq!(a.ideal(2).to_vec(), vec![0, 2]);
        assert_eq!(a.ideal(3).to_vec(), vec![1, 2]);
    }

    #[test]
    fn zero_ideal_acts_as_zero() {
        let th = fixtures::sec52();
        assert!(th.validate().is_valid());
        assert!(th.ideal(2).is_empty());
        assert!(th.act(2, &AlgElement::from_i64(q(), &[3, 4])).is_zero());
    }

    #[test]
    fn broken_identity_reports_p2() {
        let a = fixtures::ex0();
        let mut sigma = a.maps().to_vec();
        sigma[0][1] = Some(2);
        sigma[0][2] = Some(1);
        let bad = SetPartialAction::new(a.group_arc().clone(), 3, sigma).unwrap();
        let report = bad.validate();
        assert!(report.violates(Axiom::P2));
        assert_eq!(report.violations.iter().find(|v| v.axiom == Axiom::P2).unwrap().x, Some(1));
    }

    #[test]
    fn broken_p3_is_reported() {
        let bad = fixtures::broken_p3();
        let report = bad.validate();
        assert!(!report.is_valid());
        assert!(report.violates(Axiom::P3) || report.violates(Axiom::P4));
    }

    #[test]
    fn global_actions_are_valid() {
        let c6 = Arc::new(build_cyclic_product(&[6]).unwrap());
        let b = SetPartialAction::global(c6.clone(), 6, |g, x| (g + x) % 6).unwrap();
        assert!(b.validate().is_valid());
        assert!(b.is_global());
    }

    #[test]
    fn restriction() {
        let a = fixtures::ex0();
        let h = subgroup_closure(a.group(), &[2]).unwrap();
        let r = a.restrict_to_subgroup(&h);
        assert_eq!(r.group().order(), 2);
        assert_eq!(r.domain(1).to_vec(), vec![0, 2]);
        assert!(r.validate().is_valid());
        let t = a.restrict_to_subgroup(&Subgroup::trivial());
        assert_eq!(t.group().order(), 1);
        assert_eq!(a.restrict_to_subgroup(&Subgroup::whole(a.group())), a);
    }

    #[test]
    fn induced_actions() {
        let a = fixtures::ec6r();
        assert!(a.validate().is_valid());
        let names: Vec<&str> = a.labels().iter().map(String::as_str).collect();
        assert_eq!(names, vec!["e1", "e3", "e6"]);
        let lab = |s: PointSet| s.members().map(|x| a.label(x).to_string()).collect::<Vec<_>>();
        assert_eq!(lab(a.ideal(1)), vec!["e1"]);
        assert_eq!(lab(a.ideal(2)), vec!["e3"]);
        assert_eq!(lab(a.ideal(3)), vec!["e3", "e6"]);
        assert_eq!(lab(a.ideal(4)), vec!["e1"]);
        assert_eq!(lab(a.ideal(5)), vec!["e6"]);
        let b = fixtures::c6_shift();
        let all: Vec<usize> = (0..6).collect();
        assert_eq!(induce_from_global(&b, &all).unwrap(), b);
        let empty = induce_from_global(&b, &[]).unwrap();
        assert_eq!(empty.points(), 0);
        assert!(empty.validate().is_valid());
        assert_eq!(induce_from_global(&a, &[0]).unwrap_err(), Error::NotGlobal);
    }

    #[test]
    fn traces() {
        let th = fixtures::sec52();
        let e1 = AlgElement::basis(q(), 2, 0);
        assert_eq!(th.trace(&e1), AlgElement::one(q(), 2));
        let a = fixtures::ex0();
        assert_eq!(a.trace(&AlgElement::basis(q(), 3, 0)), AlgElement::one(q(), 3));
        let trivial = SetPartialAction::global(Arc::new(build_cyclic_product(&[1]).unwrap()), 3, |_, x| x).unwrap();
        let s = AlgElement::from_i64(q(), &[1, -2, 9]);
        assert_eq!(trivial.trace(&s), s);
    }

    #[test]
    fn records_reject_empty_and_invalid() {
        let c4 = Arc::new(build_cyclic_product(&[4]).unwrap());
        let empty = SetPartialAction::new(c4, 0, vec![vec![]; 4]).unwrap();
        assert_eq!(ExtensionRecord::new(empty, q()).unwrap_err(), Error::EmptyAlgebra);
        assert!(matches!(
            ExtensionRecord::new(fixtures::broken_p3(), q()),
            Err(Error::ValidationFailed(_))
        ));
        let r = ExtensionRecord::new(fixtures::ex0(), q()).unwrap();
        assert!(r.is_galois());
        r.verify_caches().unwrap();
    }
}
