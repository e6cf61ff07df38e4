//! The commutative inverse semigroup of partial abelian Galois extensions.
//!
//! Elements are Galois [`ExtensionRecord`]s compared up to partial
//! isomorphism through [`CanonicalForm`]. The product tensors two actions,
//! takes invariants under `δG ≤ G×G` and lets `(G×G)/δG ≅ G` act, with the
//! identification `g ↦ (g,1)δG`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::galois::{canonical_form, find_iso, partial_iso, unit_homomorphism, CanonicalForm, DEFAULT_TIMEOUT};
use crate::group::{antidiagonal, build_cyclic_product, diagonal, direct_product, quotient, GroupTable, Subgroup};
use crate::paction::{AlgElement, ExtensionRecord, SetPartialAction};
use crate::quotient::{invariants, quotient_partial_action, quotient_partial_action_direct, QuotientAction};
use crate::ring::BaseRing;

/// Which copy of `G` inside `G×G` the product divides by.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DeltaConvention {
    /// `{(g, g⁻¹)}`.
    #[default]
    Antidiagonal,
    /// `{(g, g)}`.
    Diagonal,
}

impl FromStr for DeltaConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "antidiagonal" => Ok(Self::Antidiagonal),
            "diagonal" => Ok(Self::Diagonal),
            other => Err(Error::Parse(format!("unknown delta convention `{other}`"))),
        }
    }
}

impl fmt::Display for DeltaConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Antidiagonal => "antidiagonal",
            Self::Diagonal => "diagonal",
        })
    }
}

impl DeltaConvention {
    pub fn subgroup(self, g: &GroupTable) -> Result<Subgroup> {
        match self {
            Self::Antidiagonal => antidiagonal(g),
            Self::Diagonal => diagonal(g),
        }
    }
}

/// A Galois extension together with its canonical form.
#[derive(Clone, Debug)]
pub struct SemigroupNode {
    pub record: ExtensionRecord,
    pub form: CanonicalForm,
}

impl SemigroupNode {
    pub fn new(action: SetPartialAction, ring: BaseRing) -> Result<Self> {
        let form = canonical_form(&action);
        let record = ExtensionRecord::galois(action, ring)?;
        Ok(Self { record, form })
    }

    pub fn from_record(record: ExtensionRecord) -> Result<Self> {
        if !record.is_galois() {
            return Err(Error::NotGalois);
        }
        let form = canonical_form(record.action());
        Ok(Self { record, form })
    }

    pub fn action(&self) -> &SetPartialAction {
        self.record.action()
    }

    pub fn ring(&self) -> BaseRing {
        self.record.ring()
    }

    /// Equal classes in the semigroup.
    pub fn same_class(&self, o: &Self) -> bool {
        self.form == o.form
    }
}

/// `α ⊗ α'` on `X × X'`, point `(x, x')` at index `x·|X'| + x'`.
#[derive(Clone, Debug)]
pub struct TensorAction {
    pub action: SetPartialAction,
    pub left_points: usize,
    pub right_points: usize,
}

impl TensorAction {
    pub fn point(&self, x: usize, y: usize) -> usize {
        x * self.right_points + y
    }
}

fn tensor_label(a: &str, b: &str) -> String {
    format!("{a}⊗{b}")
}

/// Unchecked tensor product of two actions.
pub fn tensor_action(a: &SetPartialAction, b: &SetPartialAction) -> Result<TensorAction> {
    let (g, h) = (a.group(), b.group());
    let gh = Arc::new(direct_product(g, h)?);
    let (n, m) = (a.points(), b.points());
    let mut sigma = vec![vec![None; n * m]; gh.order()];
    for (k, row) in sigma.iter_mut().enumerate() {
        let (k1, k2) = (k / h.order(), k % h.order());
        for x in 0..n {
            for y in 0..m {
                if let (Some(x2), Some(y2)) = (a.map(k1, x), b.map(k2, y)) {
                    row[x * m + y] = Some(x2 * m + y2);
                }
            }
        }
    }
    let labels = (0..n * m)
        .map(|p| tensor_label(a.label(p / m), b.label(p % m)))
        .collect();
    Ok(TensorAction {
        action: SetPartialAction::new(gh, n * m, sigma)?.with_labels(labels),
        left_points: n,
        right_points: m,
    })
}

/// Tensor product of two Galois extensions over abelian groups, certified.
pub fn tensor(a: &ExtensionRecord, b: &ExtensionRecord) -> Result<(TensorAction, ExtensionRecord)> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    if !a.group().is_abelian() || !b.group().is_abelian() {
        return Err(Error::NotAbelian);
    }
    if !a.is_galois() || !b.is_galois() {
        return Err(Error::NotGalois);
    }
    let t = tensor_action(a.action(), b.action())?;
    let rec = ExtensionRecord::galois(t.action.clone(), a.ring())?;
    Ok((t, rec))
}

/// The product together with its intermediate data.
#[derive(Clone, Debug)]
pub struct StarProduct {
    pub tensor: TensorAction,
    pub quotient: QuotientAction,
    /// Coset of `(g,1)` for every `g`.
    pub coset_of: Vec<usize>,
    pub node: SemigroupNode,
}

/// Moves an action of `(G×G)/δ` to `G` along `g ↦ (g,1)δ`.
fn transport(qa: &QuotientAction, g: &Arc<GroupTable>) -> Result<(SetPartialAction, Vec<usize>)> {
    let n = g.order();
    let coset_of: Vec<usize> = g.elements().map(|x| qa.quotient.coset_index(x * n)).collect();
    let sigma = coset_of.iter().map(|&c| qa.action.maps()[c].clone()).collect();
    let action = SetPartialAction::new(g.clone(), qa.action.points(), sigma)?.with_labels(qa.action.labels().to_vec());
    Ok((action, coset_of))
}

fn check_pair(a: &ExtensionRecord, b: &ExtensionRecord) -> Result<()> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch);
    }
    if a.group() != b.group() {
        return Err(Error::GroupMismatch);
    }
    if !a.group().is_abelian() {
        return Err(Error::NotAbelian);
    }
    if !a.is_galois() || !b.is_galois() {
        return Err(Error::NotGalois);
    }
    Ok(())
}

pub fn star_product(a: &ExtensionRecord, b: &ExtensionRecord, delta: DeltaConvention) -> Result<StarProduct> {
    check_pair(a, b)?;
    let t = tensor_action(a.action(), b.action())?;
    let d = delta.subgroup(a.group())?;
    let qa = quotient_partial_action(&t.action, &d)?;
    let (action, coset_of) = transport(&qa, a.action().group_arc())?;
    let node = SemigroupNode::new(action, a.ring()).map_err(|e| match e {
        Error::NotGalois => Error::Inconsistent("product is not partial Galois".into()),
        e => e,
    })?;
    Ok(StarProduct {
        tensor: t,
        quotient: qa,
        coset_of,
        node,
    })
}

pub fn star_par(a: &ExtensionRecord, b: &ExtensionRecord, delta: DeltaConvention) -> Result<SemigroupNode> {
    Ok(star_product(a, b, delta)?.node)
}

/// `α*_g = α_{g⁻¹}` on the same algebra.
pub fn inverse_action(a: &ExtensionRecord) -> Result<SemigroupNode> {
    if !a.group().is_abelian() {
        return Err(Error::NotAbelian);
    }
    SemigroupNode::new(a.action().inverse_action(), a.ring())
}

/// `γ` of `G×G` on `⊔_g X_g`: `(g, x) ↦ (hlg, σ_h x)` for
/// `x ∈ X_g ∩ X_{h⁻¹} ∩ X_{lg}`.
#[derive(Clone, Debug)]
pub struct HatAction {
    pub action: SetPartialAction,
    /// `(g, x)` for every point.
    pub points: Vec<(usize, usize)>,
}

pub fn hat_action(a: &SetPartialAction) -> Result<HatAction> {
    let g = a.group();
    let n = g.order();
    let gg = Arc::new(direct_product(g, g)?);
    let points: Vec<(usize, usize)> = g
        .elements()
        .flat_map(|k| a.ideal(k).to_vec().into_iter().map(move |x| (k, x)))
        .collect();
    let index: HashMap<(usize, usize), usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let mut sigma = vec![vec![None; points.len()]; gg.order()];
    for h in g.elements() {
        for l in g.elements() {
            let row = &mut sigma[h * n + l];
            for (i, &(k, x)) in points.iter().enumerate() {
                let Some(y) = a.map(h, x) else { continue };
                if !a.ideal(g.mul(l, k)).contains(x) {
                    continue;
                }
                let target = (g.mul(g.mul(h, l), k), y);
                let j = *index
                    .get(&target)
                    .ok_or_else(|| Error::Inconsistent("hat action leaves its basis".into()))?;
                row[i] = Some(j);
            }
        }
    }
    let labels = points
        .iter()
        .map(|&(k, x)| format!("{}[{}]", a.label(x), g.name(k)))
        .collect();
    Ok(HatAction {
        action: SetPartialAction::new(gg, points.len(), sigma)?.with_labels(labels),
        points,
    })
}

/// `E(S, α)` membership: `α_h(a_g 1_{h⁻¹}) 1_g = a_g 1_h 1_{hg}` for all
/// `h`, `g`, with `v` a vector over the hat basis.
pub fn in_e_algebra(a: &SetPartialAction, hat: &HatAction, v: &AlgElement) -> bool {
    let g = a.group();
    let ring = v.ring();
    let n = a.points();
    let component = |k: usize| -> AlgElement {
        let mut s = AlgElement::zero(ring, n);
        for (i, &(kk, x)) in hat.points.iter().enumerate() {
            if kk == k {
                s.set(x, v.coeff(i).clone());
            }
        }
        s
    };
    let unit = |k: usize| AlgElement::indicator(ring, &a.ideal(k));
    g.elements().all(|h| {
        g.elements().all(|k| {
            let ak = component(k);
            a.act(h, &ak).mul(&unit(k)) == ak.mul(&unit(h)).mul(&unit(g.mul(h, k)))
        })
    })
}

/// Both routes to `E(S, α)` and their agreement.
#[derive(Clone, Debug)]
pub struct IdempotentReport {
    pub route_a: SemigroupNode,
    pub route_b: SemigroupNode,
    pub hat: HatAction,
}

/// Route A only: `α* ∗ α`.
pub fn idempotent_route_a(a: &ExtensionRecord, delta: DeltaConvention) -> Result<SemigroupNode> {
    let inv = inverse_action(a)?;
    star_par(&inv.record, a, delta)
}

/// Route B only: invariants of the hat action under `δG` with the quotient
/// action from the closed formulas.
pub fn idempotent_route_b(a: &ExtensionRecord, delta: DeltaConvention) -> Result<(SemigroupNode, HatAction)> {
    if !a.group().is_abelian() {
        return Err(Error::NotAbelian);
    }
    if !a.is_galois() {
        return Err(Error::NotGalois);
    }
    let hat = hat_action(a.action())?;
    let d = delta.subgroup(a.group())?;
    let qa = quotient_partial_action_direct(&hat.action, &d)?;
    let (action, _) = transport(&qa, a.action().group_arc())?;
    Ok((SemigroupNode::new(action, a.ring())?, hat))
}

pub fn idempotent_of(a: &ExtensionRecord, delta: DeltaConvention) -> Result<IdempotentReport> {
    let route_a = idempotent_route_a(a, delta)?;
    let (route_b, hat) = idempotent_route_b(a, delta)?;
    if !partial_iso(route_a.action(), route_b.action())?.is_found() {
        return Err(Error::Inconsistent("idempotent routes disagree".into()));
    }
    Ok(IdempotentReport { route_a, route_b, hat })
}

/// Result of closing seeds under the product and inverse.
#[derive(Clone, Debug)]
pub struct CliffordReport {
    pub nodes: Vec<SemigroupNode>,
    /// Index of `a*` for every node.
    pub inverse: Vec<usize>,
    /// Index of `a* ∗ a` for every node.
    pub idempotent_of: Vec<usize>,
    /// Distinct idempotents, ascending.
    pub idempotents: Vec<usize>,
    /// `(e, f)` with `e < f` in the semilattice order.
    pub order: Vec<(usize, usize)>,
    /// Members of each component, keyed like `idempotents`.
    pub components: Vec<Vec<usize>>,
    /// The homomorphism criterion matched direct comparison everywhere.
    pub criterion_agrees: bool,
    /// Members of `idempotents` with `e ∗ e ≇ e`. Nonempty exactly when the
    /// closure is not regular: `a ∗ a* ∗ a` can collapse onto the
    /// globalization of `a`.
    pub not_idempotent: Vec<usize>,
    /// The budget stopped the closure early.
    pub truncated: bool,
}

struct Closure {
    delta: DeltaConvention,
    nodes: Vec<SemigroupNode>,
    index: HashMap<CanonicalForm, usize>,
    products: HashMap<(usize, usize), usize>,
}

impl Closure {
    fn insert(&mut self, node: SemigroupNode) -> (usize, bool) {
        if let Some(&i) = self.index.get(&node.form) {
            return (i, false);
        }
        let i = self.nodes.len();
        self.index.insert(node.form.clone(), i);
        self.nodes.push(node);
        (i, true)
    }

    fn product(&mut self, i: usize, j: usize) -> Result<(usize, bool)> {
        let key = (i.min(j), i.max(j));
        if let Some(&k) = self.products.get(&key) {
            return Ok((k, false));
        }
        let node = star_par(&self.nodes[i].record, &self.nodes[j].record, self.delta)?;
        let (k, new) = self.insert(node);
        self.products.insert(key, k);
        Ok((k, new))
    }

    /// Products `i ∗ j` for `j ≤ i` not yet cached, computed on worker
    /// threads. Insertion stays with the caller, in `j` order.
    fn row(&self, i: usize) -> Result<Vec<Option<SemigroupNode>>> {
        let todo: Vec<usize> = (0..=i).filter(|&j| !self.products.contains_key(&(j, i))).collect();
        let workers = std::thread::available_parallelism().map_or(1, |n| n.get()).min(todo.len()).max(1);
        let chunk = todo.len().div_ceil(workers).max(1);
        let computed: Vec<Result<(usize, SemigroupNode)>> = std::thread::scope(|sc| {
            let handles: Vec<_> = todo
                .chunks(chunk)
                .map(|js| {
                    sc.spawn(move || {
                        js.iter()
                            .map(|&j| Ok((j, star_par(&self.nodes[i].record, &self.nodes[j].record, self.delta)?)))
                            .collect::<Vec<_>>()
                    })
                })
                .collect();
            handles.into_iter().flat_map(|h| h.join().expect("worker panicked")).collect()
        });
        let mut out: Vec<Option<SemigroupNode>> = (0..=i).map(|_| None).collect();
        for r in computed {
            let (j, node) = r?;
            out[j] = Some(node);
        }
        Ok(out)
    }

    fn inverse(&mut self, i: usize) -> Result<(usize, bool)> {
        let node = inverse_action(&self.nodes[i].record)?;
        Ok(self.insert(node))
    }
}

pub fn clifford_decompose(seeds: &[ExtensionRecord], budget: usize, delta: DeltaConvention) -> Result<CliffordReport> {
    let first = seeds.first().ok_or_else(|| Error::Parse("no seeds".into()))?;
    for s in seeds {
        check_pair(first, s)?;
    }
    let mut cl = Closure {
        delta,
        nodes: Vec::new(),
        index: HashMap::new(),
        products: HashMap::new(),
    };
    for s in seeds {
        cl.insert(SemigroupNode::from_record(s.clone())?);
    }
    let mut added = 0usize;
    let mut truncated = false;
    let mut done = 0usize;
    'outer: while done < cl.nodes.len() {
        let i = done;
        done += 1;
        let (_, new) = cl.inverse(i)?;
        if new {
            added += 1;
        }
        let row = cl.row(i)?;
        for (j, node) in row.into_iter().enumerate() {
            if added >= budget {
                truncated = cl.nodes.len() > done || j < i;
                break 'outer;
            }
            let key = (j, i);
            let k = match cl.products.get(&key) {
                Some(&k) => k,
                None => {
                    let (k, new) = cl.insert(node.expect("computed"));
                    added += usize::from(new);
                    k
                }
            };
            cl.products.insert(key, k);
        }
    }
    // Every node gets its inverse and idempotent even when truncated.
    let mut inverse = Vec::new();
    let mut idem = Vec::new();
    let mut k = 0;
    while k < cl.nodes.len() {
        let (inv, _) = cl.inverse(k)?;
        inverse.push(inv);
        idem.push(cl.product(inv, k)?.0);
        k += 1;
    }
    let mut idempotents: Vec<usize> = idem.clone();
    idempotents.sort_unstable();
    idempotents.dedup();
    let mut not_idempotent = Vec::new();
    for &e in &idempotents {
        if cl.product(e, e)?.0 != e {
            not_idempotent.push(e);
        }
    }
    let mut order = Vec::new();
    for &e in &idempotents {
        for &f in &idempotents {
            if e != f && cl.product(e, f)?.0 == e {
                order.push((e, f));
            }
        }
    }
    let components: Vec<Vec<usize>> = idempotents
        .iter()
        .map(|&e| (0..cl.nodes.len()).filter(|&x| idem.get(x) == Some(&e)).collect())
        .collect();
    let mut criterion_agrees = true;
    for &ex in &idem {
        for &e in &idempotents {
            let direct = ex == e;
            let via_hom = unit_homomorphism(cl.nodes[e].action(), cl.nodes[ex].action())?.is_some();
            if direct != via_hom {
                criterion_agrees = false;
            }
        }
    }
    Ok(CliffordReport {
        nodes: cl.nodes,
        inverse,
        idempotent_of: idem,
        idempotents,
        order,
        components,
        criterion_agrees,
        not_idempotent,
        truncated,
    })
}

/// `E_G(R)`: the regular action, global and Galois.
pub fn harrison_identity(g: &Arc<GroupTable>, ring: BaseRing) -> Result<ExtensionRecord> {
    ExtensionRecord::galois(crate::fixtures::regular(g), ring)
}

/// `(B ⊗ B')^{δG}` with `G` acting on the first factor: points are
/// `δG`-orbits on `Y × Y'`.
pub fn harrison_product(b: &ExtensionRecord, c: &ExtensionRecord, delta: DeltaConvention) -> Result<ExtensionRecord> {
    check_pair(b, c)?;
    if !b.action().is_global() || !c.action().is_global() {
        return Err(Error::NotGlobal);
    }
    let g = b.group();
    let (n, m) = (b.action().points(), c.action().points());
    let d = delta.subgroup(g)?;
    let pair_orbit = |x: usize, y: usize| -> Vec<usize> {
        let mut o: Vec<usize> = d
            .members()
            .iter()
            .map(|&k| {
                let (k1, k2) = (k / g.order(), k % g.order());
                b.action().map(k1, x).expect("global") * m + c.action().map(k2, y).expect("global")
            })
            .collect();
        o.sort_unstable();
        o.dedup();
        o
    };
    let mut orbit_of = vec![usize::MAX; n * m];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for p in 0..n * m {
        if orbit_of[p] == usize::MAX {
            let o = pair_orbit(p / m, p % m);
            for &q in &o {
                orbit_of[q] = orbits.len();
            }
            orbits.push(o);
        }
    }
    let labels = orbits
        .iter()
        .map(|o| {
            o.iter()
                .map(|&p| tensor_label(b.action().label(p / m), c.action().label(p % m)))
                .collect::<Vec<_>>()
                .join("+")
        })
        .collect();
    let action = SetPartialAction::global(b.action().group_arc().clone(), orbits.len(), |k, o| {
        let p = orbits[o][0];
        orbit_of[b.action().map(k, p / m).expect("global") * m + p % m]
    })?
    .with_labels(labels);
    let rec = ExtensionRecord::new(action, b.ring())?;
    if !rec.is_galois() {
        return Err(Error::Inconsistent("Harrison product is not Galois".into()));
    }
    Ok(rec)
}

/// `π(⌊S, α⌋) = [T, β]`.
pub fn pi_image(a: &ExtensionRecord) -> Result<ExtensionRecord> {
    if !a.is_galois() {
        return Err(Error::NotGalois);
    }
    ExtensionRecord::new(a.globalization().global().clone(), a.ring())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PiReport {
    /// Points of `π(a ∗ b)`.
    pub product_image: usize,
    /// Points of `π(a) ∗ π(b)`.
    pub image_product: usize,
    /// Both invariant rings are `R`.
    pub invariants_agree: bool,
    pub isomorphic: bool,
}

impl PiReport {
    pub fn holds(&self) -> bool {
        self.invariants_agree && self.isomorphic
    }
}

pub fn pi_homomorphism_check(a: &ExtensionRecord, b: &ExtensionRecord, delta: DeltaConvention) -> Result<PiReport> {
    let lhs = pi_image(&star_par(a, b, delta)?.record)?;
    let rhs = harrison_product(&pi_image(a)?, &pi_image(b)?, delta)?;
    let isomorphic = find_iso(lhs.action(), rhs.action(), None, DEFAULT_TIMEOUT)?.is_found();
    Ok(PiReport {
        product_image: lhs.action().points(),
        image_product: rhs.action().points(),
        invariants_agree: lhs.invariants().len() == 1 && rhs.invariants().len() == 1,
        isomorphic,
    })
}

/// Coordinates of an element of a cyclic product, in factor order.
fn digits(factors: &[usize], mut x: usize) -> Vec<usize> {
    let mut d = vec![0; factors.len()];
    for i in (0..factors.len()).rev() {
        d[i] = x % factors[i];
        x /= factors[i];
    }
    d
}

fn undigits(factors: &[usize], d: &[usize]) -> usize {
    d.iter().zip(factors).fold(0, |acc, (&v, &f)| acc * f + v)
}

/// `S_i = S^{α_{H_i}}` with `G/H_i ≅ G_i` acting, one per cyclic factor.
pub fn cyclic_reduce(a: &ExtensionRecord) -> Result<Vec<ExtensionRecord>> {
    let g = a.group();
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let factors = g.cyclic_factors().ok_or(Error::NotCyclicProduct)?.to_vec();
    if g.order() == 1 {
        return Ok(Vec::new());
    }
    let mut pieces = Vec::new();
    for (i, &ni) in factors.iter().enumerate() {
        let members: Vec<usize> = g.elements().filter(|&x| digits(&factors, x)[i] == 0).collect();
        let h = Subgroup::from_members(g, &members)?;
        let qa = quotient_partial_action(a.action(), &h)?;
        let gi = Arc::new(build_cyclic_product(&[ni])?);
        let sigma = (0..ni)
            .map(|k| {
                let mut d = vec![0; factors.len()];
                d[i] = k;
                qa.action.maps()[qa.quotient.coset_index(undigits(&factors, &d))].clone()
            })
            .collect();
        let action = SetPartialAction::new(gi, qa.action.points(), sigma)?.with_labels(qa.action.labels().to_vec());
        pieces.push(ExtensionRecord::new(action, a.ring())?);
    }
    Ok(pieces)
}

/// Tensor of the pieces, acting through `G_1 × … × G_n`.
pub fn recompose(pieces: &[ExtensionRecord], g: &Arc<GroupTable>, ring: BaseRing) -> Result<ExtensionRecord> {
    let Some((first, rest)) = pieces.split_first() else {
        return ExtensionRecord::new(SetPartialAction::base_ring_action(g.clone()), ring);
    };
    let mut acc = first.action().clone();
    for p in rest {
        acc = tensor_action(&acc, p.action())?.action;
    }
    ExtensionRecord::new(acc.over_group(g.clone())?, ring)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicRoundTrip {
    pub piece_sizes: Vec<usize>,
    pub recomposed_points: usize,
    pub isomorphic: bool,
}

pub fn cyclic_round_trip(a: &ExtensionRecord) -> Result<CyclicRoundTrip> {
    let pieces = cyclic_reduce(a)?;
    let back = recompose(&pieces, a.action().group_arc(), a.ring())?;
    Ok(CyclicRoundTrip {
        piece_sizes: pieces.iter().map(|p| p.action().points()).collect(),
        recomposed_points: back.action().points(),
        isomorphic: partial_iso(back.action(), a.action())?.is_found(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProFimReport {
    /// Every `1_g` is nonzero.
    pub hypothesis: bool,
    pub idempotent_global: bool,
    /// The idempotent is `E_G(R)`.
    pub over_identity: bool,
}

impl ProFimReport {
    pub fn holds(&self) -> bool {
        !self.hypothesis || (self.idempotent_global && self.over_identity)
    }
}

pub fn pro_fim_check(a: &ExtensionRecord, delta: DeltaConvention) -> Result<ProFimReport> {
    let hypothesis = a.group().elements().all(|g| !a.action().ideal(g).is_empty());
    let e = idempotent_route_a(a, delta)?;
    let id = harrison_identity(a.action().group_arc(), a.ring())?;
    Ok(ProFimReport {
        hypothesis,
        idempotent_global: e.action().is_global(),
        over_identity: partial_iso(e.action(), id.action())?.is_found(),
    })
}

/// Checks `S^{α_G}` for the whole group in one block; used by the tests of
/// the module and by callers that need `A ≅ R`.
pub fn invariant_ring_is_base(a: &SetPartialAction) -> bool {
    invariants(a, &Subgroup::whole(a.group())).len() == 1
}

/// `(G×G)/δG` as computed, for reports.
pub fn delta_quotient(g: &GroupTable, delta: DeltaConvention) -> Result<crate::group::QuotientData> {
    let gg = direct_product(g, g)?;
    quotient(&gg, &delta.subgroup(g)?)
}
