//! Partial Galois certification and the two isomorphism relations.
//!
//! With a field as base ring every unit-preserving algebra isomorphism of
//! split algebras permutes the primitive idempotents, so isomorphisms are
//! searched as point bijections.

use std::collections::VecDeque;
use std::time::{Duration, Instant};

use crate::envelope::{globalize, Globalization};
use crate::error::{Error, Result};
use crate::group::{all_subgroups, is_normal};
use crate::paction::{AlgElement, PointSet, SetPartialAction};
use crate::quotient::{invariants, quotient_partial_action};
use crate::group::Subgroup;
use crate::ring::{is_bijective, solve, BaseRing, Matrix};

pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(10);

/// Why an action failed the criterion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaloisFailure {
    /// `S^{α_G}` has more than one block.
    InvariantsNotBaseRing { blocks: usize },
    /// `φ` is not bijective.
    PhiNotBijective { rows: usize, cols: usize, rank: usize },
    /// `φ` is bijective but no coordinates solve the system; never expected.
    NoCoordinates,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GaloisCertificate {
    Galois { coords: Vec<(AlgElement, AlgElement)> },
    NotGalois(GaloisFailure),
}

impl GaloisCertificate {
    pub fn is_galois(&self) -> bool {
        matches!(self, GaloisCertificate::Galois { .. })
    }

    pub fn coords(&self) -> Option<&[(AlgElement, AlgElement)]> {
        match self {
            GaloisCertificate::Galois { coords } => Some(coords),
            GaloisCertificate::NotGalois(_) => None,
        }
    }
}

/// The matrix of `φ(x⊗y) = (x α_g(y 1_{g⁻¹}))_g` in the bases
/// `e_x⊗e_y` (column `x·N + y`) and `(g, e_z)`, `z ∈ X_g`.
pub fn phi_matrix(a: &SetPartialAction, ring: BaseRing) -> (Matrix, Vec<(usize, usize)>) {
    let n = a.points();
    let mut rows = Vec::new();
    for g in a.group().elements() {
        for z in a.ideal(g).members() {
            rows.push((g, z));
        }
    }
    let mut m = Matrix::zeros(ring, rows.len(), n * n);
    for (r, &(g, z)) in rows.iter().enumerate() {
        for y in 0..n {
            if a.map(g, y) == Some(z) {
                m.set(r, z * n + y, ring.one());
            }
        }
    }
    (m, rows)
}

/// Checks `Σ x_i α_g(y_i 1_{g⁻¹}) = δ_{1,g} 1_S` for every `g`.
pub fn verify_coordinates(a: &SetPartialAction, coords: &[(AlgElement, AlgElement)]) -> bool {
    let n = a.points();
    let Some(ring) = coords.first().map(|c| c.0.ring()) else {
        return n == 0;
    };
    let id = a.group().identity();
    a.group().elements().all(|g| {
        let sum = coords
            .iter()
            .fold(AlgElement::zero(ring, n), |acc, (x, y)| acc.add(&x.mul(&a.act(g, y))));
        if g == id {
            sum == AlgElement::one(ring, n)
        } else {
            sum.is_zero()
        }
    })
}

/// The criterion: one invariant block and `φ` bijective; coordinates are
/// solved from `φ(Σ x_i⊗y_i) = (δ_{1,g}1_g)_g` and re-verified.
pub fn galois_check(a: &SetPartialAction, ring: BaseRing) -> Result<GaloisCertificate> {
    a.validate().into_result()?;
    let blocks = invariants(a, &Subgroup::whole(a.group())).len();
    if blocks != 1 {
        return Ok(GaloisCertificate::NotGalois(GaloisFailure::InvariantsNotBaseRing { blocks }));
    }
    let n = a.points();
    let (m, rows) = phi_matrix(a, ring);
    if !is_bijective(&m) {
        return Ok(GaloisCertificate::NotGalois(GaloisFailure::PhiNotBijective {
            rows: m.rows(),
            cols: m.cols(),
            rank: m.rank(),
        }));
    }
    let id = a.group().identity();
    let target: Vec<_> = rows
        .iter()
        .map(|&(g, _)| if g == id { ring.one() } else { ring.zero() })
        .collect();
    let Some(c) = solve(&m, &target)? else {
        return Ok(GaloisCertificate::NotGalois(GaloisFailure::NoCoordinates));
    };
    let mut coords = Vec::new();
    for x in 0..n {
        let y = AlgElement::from_coeffs(ring, c[x * n..(x + 1) * n].to_vec());
        if !y.is_zero() {
            coords.push((AlgElement::basis(ring, n, x), y));
        }
    }
    if !verify_coordinates(a, &coords) {
        return Err(Error::Inconsistent("solved coordinates fail verification".into()));
    }
    Ok(GaloisCertificate::Galois { coords })
}

/// Whether `tr(s) = 1_S` has a solution.
pub fn trace_surjective(a: &SetPartialAction, ring: BaseRing) -> Result<bool> {
    let n = a.points();
    let mut m = Matrix::zeros(ring, n, n);
    for x in 0..n {
        let t = a.trace(&AlgElement::basis(ring, n, x));
        for z in 0..n {
            m.set(z, x, t.coeff(z).clone());
        }
    }
    Ok(solve(&m, &vec![ring.one(); n])?.is_some())
}

/// A point bijection `x ↦ map[x]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    pub map: Vec<usize>,
}

impl IsoWitness {
    pub fn identity(n: usize) -> Self {
        Self { map: (0..n).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Self { map: inv }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Self) -> Self {
        Self {
            map: self.map.iter().map(|&y| other.map[y]).collect(),
        }
    }

    /// Domains correspond and the maps intertwine.
    pub fn verify(&self, a: &SetPartialAction, b: &SetPartialAction) -> bool {
        if a.points() != b.points() || self.map.len() != a.points() || a.group() != b.group() {
            return false;
        }
        let mut seen = vec![false; self.map.len()];
        for &y in &self.map {
            if y >= seen.len() || std::mem::replace(&mut seen[y], true) {
                return false;
            }
        }
        a.group().elements().all(|g| {
            (0..a.points()).all(|x| a.map(g, x).map(|y| self.map[y]) == b.map(g, self.map[x]))
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    Found(IsoWitness),
    NotFound,
    /// The search hit its deadline.
    Indeterminate,
}

impl IsoOutcome {
    pub fn is_found(&self) -> bool {
        matches!(self, IsoOutcome::Found(_))
    }

    pub fn witness(&self) -> Option<&IsoWitness> {
        match self {
            IsoOutcome::Found(w) => Some(w),
            _ => None,
        }
    }
}

struct Search<'a> {
    a: &'a SetPartialAction,
    b: &'a SetPartialAction,
    key_a: Vec<(Vec<bool>, u32)>,
    key_b: Vec<(Vec<bool>, u32)>,
    map: Vec<Option<usize>>,
    used: Vec<bool>,
    deadline: Instant,
    steps: u64,
}

enum Step {
    Done,
    Fail,
    Timeout,
}

impl Search<'_> {
    fn assign(&mut self, x: usize, y: usize, trail: &mut Vec<usize>) -> bool {
        let mut stack = vec![(x, y)];
        while let Some((x, y)) = stack.pop() {
            match self.map[x] {
                Some(v) if v == y => continue,
                Some(_) => return false,
                None => {}
            }
            if self.used[y] || self.key_a[x] != self.key_b[y] {
                return false;
            }
            self.map[x] = Some(y);
            self.used[y] = true;
            trail.push(x);
            for g in self.a.group().elements() {
                match (self.a.map(g, x), self.b.map(g, y)) {
                    (None, None) => {}
                    (Some(x2), Some(y2)) => stack.push((x2, y2)),
                    _ => return false,
                }
            }
        }
        true
    }

    fn undo(&mut self, trail: &[usize]) {
        for &x in trail {
            if let Some(y) = self.map[x].take() {
                self.used[y] = false;
            }
        }
    }

    fn run(&mut self) -> Step {
        self.steps += 1;
        if self.steps.is_multiple_of(256) && Instant::now() >= self.deadline {
            return Step::Timeout;
        }
        let Some(x) = self.map.iter().position(Option::is_none) else {
            return Step::Done;
        };
        for y in 0..self.b.points() {
            if self.used[y] || self.key_a[x] != self.key_b[y] {
                continue;
            }
            let mut trail = Vec::new();
            if self.assign(x, y, &mut trail) {
                match self.run() {
                    Step::Done => return Step::Done,
                    Step::Timeout => return Step::Timeout,
                    Step::Fail => {}
                }
            }
            self.undo(&trail);
        }
        Step::Fail
    }
}

/// Backtracking search for an equivariant bijection respecting domains and,
/// when given, point colours.
pub fn find_iso(
    a: &SetPartialAction,
    b: &SetPartialAction,
    colours: Option<(&[u32], &[u32])>,
    timeout: Duration,
) -> Result<IsoOutcome> {
    if a.group() != b.group() {
        return Err(Error::GroupMismatch);
    }
    if a.points() != b.points() {
        return Ok(IsoOutcome::NotFound);
    }
    let key = |s: &SetPartialAction, c: Option<&[u32]>| -> Vec<(Vec<bool>, u32)> {
        (0..s.points())
            .map(|x| (s.signature(x), c.map_or(0, |c| c[x])))
            .collect()
    };
    let mut search = Search {
        a,
        b,
        key_a: key(a, colours.map(|c| c.0)),
        key_b: key(b, colours.map(|c| c.1)),
        map: vec![None; a.points()],
        used: vec![false; b.points()],
        deadline: Instant::now() + timeout,
        steps: 0,
    };
    let mut ka = search.key_a.clone();
    let mut kb = search.key_b.clone();
    ka.sort();
    kb.sort();
    if ka != kb {
        return Ok(IsoOutcome::NotFound);
    }
    Ok(match search.run() {
        Step::Done => IsoOutcome::Found(IsoWitness {
            map: search.map.into_iter().map(|y| y.expect("complete")).collect(),
        }),
        Step::Fail => IsoOutcome::NotFound,
        Step::Timeout => IsoOutcome::Indeterminate,
    })
}

pub fn partial_iso(a: &SetPartialAction, b: &SetPartialAction) -> Result<IsoOutcome> {
    partial_iso_with_timeout(a, b, DEFAULT_TIMEOUT)
}

pub fn partial_iso_with_timeout(a: &SetPartialAction, b: &SetPartialAction, timeout: Duration) -> Result<IsoOutcome> {
    find_iso(a, b, None, timeout)
}

/// As [`partial_iso`], also requiring both sides to be Galois over `ring`.
pub fn partial_iso_galois(a: &SetPartialAction, b: &SetPartialAction, ring: BaseRing) -> Result<IsoOutcome> {
    if a.group() != b.group() {
        return Err(Error::GroupMismatch);
    }
    if !galois_check(a, ring)?.is_galois() || !galois_check(b, ring)?.is_galois() {
        return Err(Error::NotGalois);
    }
    partial_iso(a, b)
}

/// A `G`-isomorphism `T → T'` carrying `embed(X)` onto `embed'(X')`.
pub fn global_pair_iso(p: &Globalization, q: &Globalization) -> Result<IsoOutcome> {
    global_pair_iso_with_timeout(p, q, DEFAULT_TIMEOUT)
}

pub fn global_pair_iso_with_timeout(p: &Globalization, q: &Globalization, timeout: Duration) -> Result<IsoOutcome> {
    let colour = |gl: &Globalization| -> Vec<u32> {
        let s = gl.unit_s();
        (0..gl.size()).map(|y| u32::from(s.contains(y))).collect()
    };
    let (cp, cq) = (colour(p), colour(q));
    find_iso(p.global(), q.global(), Some((&cp, &cq)), timeout)
}

/// Relabeling-invariant serialization of an action; equal forms mean
/// partially isomorphic actions.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(pub Vec<u32>);

/// BFS labeling from `start` and its serialization.
fn component_form(a: &SetPartialAction, start: usize) -> (Vec<u32>, Vec<usize>) {
    let mut order = vec![start];
    let mut local = std::collections::HashMap::new();
    local.insert(start, 0u32);
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        for g in a.group().elements() {
            if let Some(y) = a.map(g, x) {
                if let std::collections::hash_map::Entry::Vacant(e) = local.entry(y) {
                    e.insert(order.len() as u32);
                    order.push(y);
                    queue.push_back(y);
                }
            }
        }
    }
    let mut data = vec![order.len() as u32];
    for g in a.group().elements() {
        for &x in &order {
            data.push(a.map(g, x).map_or(0, |y| local[&y] + 1));
        }
    }
    (data, order)
}

/// Returns the canonical form and a relabeling `old → new` realizing it.
pub fn canonical_labeling(a: &SetPartialAction) -> (CanonicalForm, Vec<usize>) {
    let mut comps: Vec<(Vec<u32>, Vec<usize>)> = a
        .orbits()
        .iter()
        .map(|orbit| {
            orbit
                .iter()
                .map(|&s| component_form(a, s))
                .min()
                .expect("orbits are nonempty")
        })
        .collect();
    comps.sort();
    let mut data = vec![a.group().order() as u32, a.points() as u32];
    let mut perm = vec![0; a.points()];
    let mut next = 0;
    for (form, order) in comps {
        data.extend(form);
        for x in order {
            perm[x] = next;
            next += 1;
        }
    }
    (CanonicalForm(data), perm)
}

pub fn canonical_form(a: &SetPartialAction) -> CanonicalForm {
    canonical_labeling(a).0
}

/// The action relabeled into canonical order.
pub fn canonicalize(a: &SetPartialAction) -> SetPartialAction {
    a.relabel(&canonical_labeling(a).1)
}

/// The three clauses of the equivalence theorem for a pair of actions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquivalenceReport {
    /// Globalization pairs are isomorphic.
    pub global_pairs: bool,
    /// Quotient actions are isomorphic for every normal subgroup.
    pub quotients: bool,
    /// Orders of the normal subgroups at which quotients are isomorphic.
    pub quotient_detail: Vec<(Vec<usize>, bool)>,
    /// The actions themselves are isomorphic.
    pub partial: bool,
}

impl EquivalenceReport {
    pub fn agree(&self) -> bool {
        self.global_pairs == self.partial && self.quotients == self.partial
    }
}

fn decided(o: IsoOutcome) -> Result<bool> {
    match o {
        IsoOutcome::Found(_) => Ok(true),
        IsoOutcome::NotFound => Ok(false),
        IsoOutcome::Indeterminate => Err(Error::Inconsistent("isomorphism search timed out".into())),
    }
}

pub fn theorem_pro10_check(a: &SetPartialAction, b: &SetPartialAction, ring: BaseRing) -> Result<EquivalenceReport> {
    if a.group() != b.group() {
        return Err(Error::GroupMismatch);
    }
    if !galois_check(a, ring)?.is_galois() || !galois_check(b, ring)?.is_galois() {
        return Err(Error::NotGalois);
    }
    let global_pairs = decided(global_pair_iso(&globalize(a)?, &globalize(b)?)?)?;
    let partial = decided(partial_iso(a, b)?)?;
    let mut quotient_detail = Vec::new();
    for h in all_subgroups(a.group()) {
        if !is_normal(a.group(), &h) {
            continue;
        }
        let qa = quotient_partial_action(a, &h)?;
        let qb = quotient_partial_action(b, &h)?;
        quotient_detail.push((h.members().to_vec(), decided(partial_iso(&qa.action, &qb.action)?)?));
    }
    let quotients = quotient_detail.iter().all(|(_, ok)| *ok);
    Ok(EquivalenceReport {
        global_pairs,
        quotients,
        quotient_detail,
        partial,
    })
}

/// A unital, equivariant algebra map `f: S → S'`.
///
/// Unital algebra maps of split algebras are dual to functions
/// `φ: X' → X` with `f(e_x) = Σ_{φ(y)=x} e'_y`; equivariance on the ideals
/// means `φ` intertwines `σ'` with `σ` and preserves domains. Returns
/// `f(e_x)` for every point `x` of `S`.
pub fn unit_homomorphism(a: &SetPartialAction, b: &SetPartialAction) -> Result<Option<Vec<PointSet>>> {
    if a.group() != b.group() {
        return Err(Error::GroupMismatch);
    }
    fn go(src: &SetPartialAction, dst: &SetPartialAction, phi: &mut Vec<Option<usize>>) -> bool {
        let Some(y) = phi.iter().position(Option::is_none) else {
            return true;
        };
        for x in 0..dst.points() {
            let snapshot = phi.clone();
            let mut stack = vec![(y, x)];
            let mut ok = true;
            'prop: while let Some((y, x)) = stack.pop() {
                match phi[y] {
                    Some(v) if v == x => continue,
                    Some(_) => {
                        ok = false;
                        break;
                    }
                    None => phi[y] = Some(x),
                }
                for g in src.group().elements() {
                    match (src.map(g, y), dst.map(g, x)) {
                        (None, None) => {}
                        (Some(y2), Some(x2)) => stack.push((y2, x2)),
                        _ => {
                            ok = false;
                            break 'prop;
                        }
                    }
                }
            }
            if ok && go(src, dst, phi) {
                return true;
            }
            *phi = snapshot;
        }
        false
    }
    let mut phi = vec![None; b.points()];
    if !go(b, a, &mut phi) {
        return Ok(None);
    }
    let mut images = vec![PointSet::empty(b.points()); a.points()];
    for (y, x) in phi.into_iter().enumerate() {
        images[x.expect("complete")].insert(y);
    }
    Ok(Some(images))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::group::build_cyclic_product;
    use std::sync::Arc;

    fn q() -> BaseRing {
        BaseRing::Rationals
    }

    #[test]
    fn fixtures_are_galois() {
        for a in [fixtures::ex0(), fixtures::sec52(), fixtures::ec6r(), fixtures::c6_shift()] {
            let c = galois_check(&a, q()).unwrap();
            assert!(c.is_galois(), "{a:?}");
            assert!(verify_coordinates(&a, c.coords().unwrap()));
            assert!(galois_check(&a, BaseRing::PrimeField(5)).unwrap().is_galois());
            assert!(trace_surjective(&a, q()).unwrap());
        }
    }

    #[test]
    fn published_coordinates_verify() {
        let th = fixtures::sec52();
        let e = |i| AlgElement::basis(q(), 2, i);
        assert!(verify_coordinates(&th, &[(e(0), e(0)), (e(1), e(1))]));
        assert!(!verify_coordinates(&th, &[(e(0), e(0))]));
    }

    #[test]
    fn trivial_group_coordinates() {
        let one = Arc::new(build_cyclic_product(&[1]).unwrap());
        let r = SetPartialAction::base_ring_action(one);
        let c = galois_check(&r, q()).unwrap();
        let one_elem = AlgElement::one(q(), 1);
        assert_eq!(c.coords().unwrap(), &[(one_elem.clone(), one_elem)]);
    }

    #[test]
    fn disconnected_actions_fail() {
        let c2 = Arc::new(build_cyclic_product(&[2]).unwrap());
        let fixed = SetPartialAction::global(c2.clone(), 2, |_, x| x).unwrap();
        assert_eq!(
            galois_check(&fixed, q()).unwrap(),
            GaloisCertificate::NotGalois(GaloisFailure::InvariantsNotBaseRing { blocks: 2 })
        );
        // connected but φ has too few rows: C4 acting on 2 points through C2
        let c4 = Arc::new(build_cyclic_product(&[4]).unwrap());
        let thru = SetPartialAction::global(c4, 2, |g, x| (g + x) % 2).unwrap();
        assert!(matches!(
            galois_check(&thru, q()).unwrap(),
            GaloisCertificate::NotGalois(GaloisFailure::PhiNotBijective { .. })
        ));
    }

    #[test]
    fn iso_search() {
        let a = fixtures::ex0();
        assert_eq!(partial_iso(&a, &a).unwrap(), IsoOutcome::Found(IsoWitness::identity(3)));
        let e = fixtures::harrison_c4();
        assert_eq!(partial_iso(&a, &e).unwrap(), IsoOutcome::NotFound);
        let b = a.relabel(&[2, 0, 1]);
        let w = partial_iso(&a, &b).unwrap();
        let w = w.witness().unwrap();
        assert!(w.verify(&a, &b));
        assert!(w.inverse().verify(&b, &a));
        assert_eq!(w.then(&w.inverse()), IsoWitness::identity(3));
        assert_eq!(
            partial_iso(&a, &fixtures::sec52()).unwrap(),
            IsoOutcome::NotFound
        );
        assert_eq!(partial_iso(&a, &fixtures::ec6r()).unwrap_err(), Error::GroupMismatch);
    }

    #[test]
    fn zero_timeout_is_indeterminate_on_hard_search() {
        // many automorphic points force a long search only when it fails late;
        // a zero deadline is checked every 256 steps, so use a large instance
        let c1 = Arc::new(build_cyclic_product(&[1]).unwrap());
        let a = SetPartialAction::global(c1.clone(), 600, |_, x| x).unwrap();
        let out = partial_iso_with_timeout(&a, &a, Duration::ZERO).unwrap();
        assert_eq!(out, IsoOutcome::Indeterminate);
    }

    #[test]
    fn global_pairs() {
        let gl = globalize(&fixtures::ex0()).unwrap();
        assert!(global_pair_iso(&gl, &gl).unwrap().is_found());
        let full = globalize(gl.global()).unwrap();
        assert_eq!(global_pair_iso(&gl, &full).unwrap(), IsoOutcome::NotFound);
    }

    #[test]
    fn canonical_forms() {
        let a = fixtures::ex0();
        let b = a.relabel(&[1, 2, 0]);
        assert_eq!(canonical_form(&a), canonical_form(&b));
        assert_eq!(canonicalize(&a), canonicalize(&b));
        assert_ne!(canonical_form(&a), canonical_form(&fixtures::sec52()));
        let c = canonicalize(&a);
        assert!(partial_iso(&a, &c).unwrap().is_found());
    }

    #[test]
    fn equivalence_theorem() {
        let a = fixtures::sec52();
        let r = theorem_pro10_check(&a, &a.relabel(&[1, 0]), q()).unwrap();
        assert!(r.agree() && r.partial);
        let r = theorem_pro10_check(&fixtures::ex0(), &fixtures::sec52(), q()).unwrap();
        assert!(r.agree() && !r.partial);
    }

    #[test]
    fn unit_homomorphisms() {
        let e = fixtures::harrison_c4();
        assert!(unit_homomorphism(&e, &e).unwrap().is_some());
        let a = fixtures::ex0();
        assert!(unit_homomorphism(&a, &e).unwrap().is_none());
    }
}
