//! Finite groups given by explicit multiplication tables.
//!
//! Elements are indices `0..n` with `0` the identity. The index order is the
//! ambient total order used everywhere else: subgroups are enumerated in it,
//! transversals pick the minimal index of every coset, and quotient tables
//! list cosets by their minimal representative.

use std::fmt;

use crate::error::{Error, Result};

/// Largest group order the engine accepts.
pub const MAX_ORDER: usize = 512;

/// A finite group as a multiplication table.
#[derive(Clone)]
pub struct GroupTable {
    n: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    names: Vec<String>,
    factors: Option<Vec<usize>>,
}

impl PartialEq for GroupTable {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.mul == other.mul
    }
}

impl Eq for GroupTable {}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("n", &self.n)
            .field("names", &self.names)
            .finish()
    }
}

impl GroupTable {
    /// Builds a group from a row-major table with `0` as identity.
    ///
    /// The table is checked exhaustively: closure, identity, inverses and
    /// associativity.
    pub fn from_table(rows: Vec<Vec<usize>>) -> Result<Self> {
        let n = rows.len();
        let names = default_names(n);
        Self::from_table_named(rows, names)
    }

    pub fn from_table_named(rows: Vec<Vec<usize>>, names: Vec<String>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidTable("empty table".into()));
        }
        if n > MAX_ORDER {
            return Err(Error::CapacityExceeded(n));
        }
        if names.len() != n {
            return Err(Error::InvalidTable("name list length differs from order".into()));
        }
        let mut mul = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidTable(format!("row {i} has length {}", row.len())));
            }
            for &v in row {
                if v >= n {
                    return Err(Error::IndexOutOfRange { index: v, size: n });
                }
                mul.push(v);
            }
        }
        for x in 0..n {
            if mul[x] != x || mul[x * n] != x {
                return Err(Error::InvalidTable(format!("index 0 is not an identity at {x}")));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for x in 0..n {
            match (0..n).find(|&y| mul[x * n + y] == 0) {
                Some(y) if mul[y * n + x] == 0 => inv[x] = y,
                _ => return Err(Error::InvalidTable(format!("element {x} has no inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul[a * n + b];
                for c in 0..n {
                    if mul[ab * n + c] != mul[a * n + mul[b * n + c]] {
                        return Err(Error::InvalidTable(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(Self {
            n,
            mul,
            inv,
            names,
            factors: None,
        })
    }

    /// Trusted constructor for tables derived from an already valid group.
    fn derived(n: usize, mul: Vec<usize>, names: Vec<String>) -> Self {
        let mut inv = vec![0; n];
        for x in 0..n {
            inv[x] = (0..n).find(|&y| mul[x * n + y] == 0).expect("derived table has inverses");
        }
        let g = Self {
            n,
            mul,
            inv,
            names,
            factors: None,
        };
        debug_assert!(g.check_laws());
        g
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.n + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Cyclic orders this group was built from, when built by
    /// [`build_cyclic_product`].
    pub fn cyclic_factors(&self) -> Option<&[usize]> {
        self.factors.as_deref()
    }

    /// Rows of the table, for serialization.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// Resolves an element written as a name (`g^2`) or as a decimal index.
    pub fn element_by_name(&self, name: &str) -> Result<usize> {
        let trimmed = name.trim();
        if let Some(i) = self.names.iter().position(|n| n == trimmed) {
            return Ok(i);
        }
        let alt = trimmed.replace('²', "^2").replace('³', "^3");
        if let Some(i) = self.names.iter().position(|n| *n == alt) {
            return Ok(i);
        }
        if trimmed == "e" || trimmed == "id" {
            return Ok(0);
        }
        match trimmed.parse::<usize>() {
            Ok(i) if i < self.n => Ok(i),
            Ok(i) => Err(Error::IndexOutOfRange {
                index: i,
                size: self.n,
            }),
            Err(_) => Err(Error::Parse(format!("unknown group element `{trimmed}`"))),
        }
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|a| (a..self.n).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// Sorted multiset of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.elements().map(|a| self.element_order(a)).collect();
        v.sort_unstable();
        v
    }

    /// Exhaustive check of the group laws.
    pub fn check_laws(&self) -> bool {
        let n = self.n;
        for x in 0..n {
            if self.mul(0, x) != x || self.mul(x, 0) != x || self.mul(x, self.inv(x)) != 0 {
                return false;
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn default_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| if i == 0 { "1".to_string() } else { format!("x{i}") })
        .collect()
}

fn power_name(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

/// `C_{n1} × … × C_{nk}`, elements ordered lexicographically by exponent tuple.
///
/// A single factor uses the generator name `g`; several factors use
/// `g1, g2, …`.
pub fn build_cyclic_product(orders: &[usize]) -> Result<GroupTable> {
    if orders.contains(&0) {
        return Err(Error::InvalidTable("cyclic factor of order 0".into()));
    }
    let n = orders
        .iter()
        .try_fold(1usize, |acc, &o| acc.checked_mul(o))
        .unwrap_or(usize::MAX);
    if n > MAX_ORDER {
        return Err(Error::CapacityExceeded(n));
    }
    let k = orders.len();
    let tuple = |mut idx: usize| {
        let mut t = vec![0; k];
        for i in (0..k).rev() {
            t[i] = idx % orders[i];
            idx /= orders[i];
        }
        t
    };
    let index = |t: &[usize]| t.iter().zip(orders).fold(0, |acc, (&e, &o)| acc * o + e);
    let mut mul = vec![0; n * n];
    for a in 0..n {
        let ta = tuple(a);
        for b in 0..n {
            let tb = tuple(b);
            let tc: Vec<usize> = (0..k).map(|i| (ta[i] + tb[i]) % orders[i]).collect();
            mul[a * n + b] = index(&tc);
        }
    }
    let names = (0..n)
        .map(|a| {
            let t = tuple(a);
            let parts: Vec<String> = t
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    let base = if k == 1 { "g".to_string() } else { format!("g{}", i + 1) };
                    power_name(&base, e)
                })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join(" ")
            }
        })
        .collect();
    let mut g = GroupTable::derived(n, mul, names);
    g.factors = Some(orders.to_vec());
    Ok(g)
}

/// Subgroup of a parent table, as a sorted member list (always contains 0).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<usize>,
}

impl Subgroup {
    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn trivial() -> Self {
        Self { members: vec![0] }
    }

    pub fn whole(g: &GroupTable) -> Self {
        Self {
            members: g.elements().collect(),
        }
    }

    /// Checks closure and returns the subgroup; the list need not be sorted.
    pub fn from_members(g: &GroupTable, members: &[usize]) -> Result<Self> {
        let mut m = members.to_vec();
        m.sort_unstable();
        m.dedup();
        if let Some(&x) = m.iter().find(|&&x| x >= g.order()) {
            return Err(Error::IndexOutOfRange {
                index: x,
                size: g.order(),
            });
        }
        let s = Self { members: m };
        let closed = s.contains(0)
            && s.members
                .iter()
                .all(|&a| s.contains(g.inv(a)) && s.members.iter().all(|&b| s.contains(g.mul(a, b))));
        if !closed {
            return Err(Error::InvalidTable("member list is not a subgroup".into()));
        }
        Ok(s)
    }

    /// Multiplication table of the subgroup itself, indexed by position in
    /// the sorted member list; names are inherited from the parent.
    pub fn table(&self, g: &GroupTable) -> GroupTable {
        let m = self.members.len();
        let pos = |x: usize| self.members.binary_search(&x).expect("closed subgroup");
        let mut mul = vec![0; m * m];
        for (i, &a) in self.members.iter().enumerate() {
            for (j, &b) in self.members.iter().enumerate() {
                mul[i * m + j] = pos(g.mul(a, b));
            }
        }
        let names = self.members.iter().map(|&a| g.name(a).to_string()).collect();
        GroupTable::derived(m, mul, names)
    }
}

/// Smallest subgroup containing `gens`.
pub fn subgroup_closure(g: &GroupTable, gens: &[usize]) -> Result<Subgroup> {
    let n = g.order();
    if let Some(&x) = gens.iter().find(|&&x| x >= n) {
        return Err(Error::IndexOutOfRange { index: x, size: n });
    }
    let mut inside = vec![false; n];
    inside[0] = true;
    let mut members = vec![0];
    let mut frontier = vec![0];
    while let Some(a) = frontier.pop() {
        for &s in gens {
            let b = g.mul(a, s);
            if !inside[b] {
                inside[b] = true;
                members.push(b);
                frontier.push(b);
            }
        }
    }
    members.sort_unstable();
    Ok(Subgroup { members })
}

/// Whether `g H g⁻¹ = H` for every `g`.
pub fn is_normal(g: &GroupTable, h: &Subgroup) -> bool {
    g.elements().all(|x| {
        h.members()
            .iter()
            .all(|&y| h.contains(g.mul(g.mul(x, y), g.inv(x))))
    })
}

/// Every subgroup of `g`, sorted by member list. Brute force over cyclic
/// subgroups and joins, intended for small groups.
pub fn all_subgroups(g: &GroupTable) -> Vec<Subgroup> {
    let mut found: Vec<Subgroup> = Vec::new();
    let cyclic: Vec<Subgroup> = g
        .elements()
        .map(|x| subgroup_closure(g, &[x]).expect("element in range"))
        .collect();
    for c in cyclic {
        if !found.contains(&c) {
            found.push(c);
        }
    }
    let mut i = 0;
    while i < found.len() {
        let mut j = 0;
        while j < found.len() {
            let gens: Vec<usize> = found[i]
                .members()
                .iter()
                .chain(found[j].members())
                .copied()
                .collect();
            let join = subgroup_closure(g, &gens).expect("elements in range");
            if !found.contains(&join) {
                found.push(join);
            }
            j += 1;
        }
        i += 1;
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.members.cmp(&b.members)));
    found
}

/// Cosets of a normal subgroup together with the quotient table.
#[derive(Clone, Debug)]
pub struct QuotientData {
    pub cosets: Vec<Vec<usize>>,
    pub transversal: Vec<usize>,
    pub coset_of: Vec<usize>,
    pub table: GroupTable,
}

impl QuotientData {
    /// Index of the coset `gH`.
    pub fn coset_index(&self, g: usize) -> usize {
        self.coset_of[g]
    }
}

/// `G/H`, cosets ordered by their minimal member.
pub fn quotient(g: &GroupTable, h: &Subgroup) -> Result<QuotientData> {
    if !is_normal(g, h) {
        return Err(Error::NotNormal);
    }
    let n = g.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut cosets = Vec::new();
    let mut transversal = Vec::new();
    for r in 0..n {
        if coset_of[r] != usize::MAX {
            continue;
        }
        let idx = cosets.len();
        let mut c: Vec<usize> = h.members().iter().map(|&x| g.mul(r, x)).collect();
        c.sort_unstable();
        for &x in &c {
            coset_of[x] = idx;
        }
        transversal.push(r);
        cosets.push(c);
    }
    let m = cosets.len();
    if m * h.len() != n {
        return Err(Error::Inconsistent("Lagrange count failed".into()));
    }
    let mut mul = vec![0; m * m];
    for i in 0..m {
        for j in 0..m {
            mul[i * m + j] = coset_of[g.mul(transversal[i], transversal[j])];
        }
    }
    let names = transversal
        .iter()
        .map(|&r| if r == 0 { "H".to_string() } else { format!("{}H", g.name(r)) })
        .collect();
    let table = GroupTable::derived(m, mul, names);
    Ok(QuotientData {
        cosets,
        transversal,
        coset_of,
        table,
    })
}

/// `G × G'` with `(a, b)` at index `a·|G'| + b`.
pub fn direct_product(g: &GroupTable, h: &GroupTable) -> Result<GroupTable> {
    let (n1, n2) = (g.order(), h.order());
    let n = n1 * n2;
    if n > MAX_ORDER {
        return Err(Error::CapacityExceeded(n));
    }
    let mut mul = vec![0; n * n];
    for a in 0..n {
        for b in 0..n {
            let (a1, a2) = (a / n2, a % n2);
            let (b1, b2) = (b / n2, b % n2);
            mul[a * n + b] = g.mul(a1, b1) * n2 + h.mul(a2, b2);
        }
    }
    let names = (0..n)
        .map(|a| format!("({},{})", g.name(a / n2), h.name(a % n2)))
        .collect();
    Ok(GroupTable::derived(n, mul, names))
}

/// `δG = {(g, g⁻¹)}` inside `direct_product(G, G)`.
pub fn antidiagonal(g: &GroupTable) -> Result<Subgroup> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let n = g.order();
    let mut members: Vec<usize> = g.elements().map(|a| a * n + g.inv(a)).collect();
    members.sort_unstable();
    Ok(Subgroup { members })
}

/// `{(g, g)}` inside `direct_product(G, G)`.
pub fn diagonal(g: &GroupTable) -> Result<Subgroup> {
    if !g.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let n = g.order();
    let members: Vec<usize> = g.elements().map(|a| a * n + a).collect();
    Ok(Subgroup { members })
}

/// Symmetric group on three letters, for tests and the non-abelian paths.
pub fn symmetric_group_s3() -> GroupTable {
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2],
        [1, 2, 0],
        [2, 0, 1],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
    ];
    let compose = |p: &[usize; 3], q: &[usize; 3]| -> [usize; 3] { [p[q[0]], p[q[1]], p[q[2]]] };
    let idx = |p: [usize; 3]| perms.iter().position(|q| *q == p).expect("closed");
    let rows = perms
        .iter()
        .map(|p| perms.iter().map(|q| idx(compose(p, q))).collect())
        .collect();
    let names = ["1", "r", "r^2", "s", "sr", "sr^2"].map(String::from).to_vec();
    GroupTable::from_table_named(rows, names).expect("S3 is a group")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force isomorphism search between two small tables.
    fn isomorphic(a: &GroupTable, b: &GroupTable) -> bool {
        fn extend(a: &GroupTable, b: &GroupTable, map: &mut Vec<usize>, used: &mut Vec<bool>) -> bool {
            let k = map.len();
            if k == a.order() {
                return (0..k).all(|x| (0..k).all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])));
            }
            for c in 0..b.order() {
                if used[c] || (k == 0 && c != 0) {
                    continue;
                }
                used[c] = true;
                map.push(c);
                if extend(a, b, map, used) {
                    return true;
                }
                map.pop();
                used[c] = false;
            }
            false
        }
        a.order() == b.order() && extend(a, b, &mut Vec::new(), &mut vec![false; b.order()])
    }

    #[test]
    fn cyclic_four_names_and_laws() {
        let c4 = build_cyclic_product(&[4]).unwrap();
        assert_eq!(c4.names(), &["1", "g", "g^2", "g^3"]);
        assert!(c4.check_laws());
        assert_eq!(c4.mul(1, 3), 0);
    }

    #[test]
    fn trivial_group() {
        let c1 = build_cyclic_product(&[1]).unwrap();
        assert_eq!(c1.order(), 1);
        assert_eq!(build_cyclic_product(&[]).unwrap().order(), 1);
    }

    #[test]
    fn c2_times_c3_is_c6() {
        let a = build_cyclic_product(&[2, 3]).unwrap();
        let b = build_cyclic_product(&[6]).unwrap();
        assert_eq!(a.order_profile(), b.order_profile());
        assert!(isomorphic(&a, &b));
        assert!(!isomorphic(&build_cyclic_product(&[2, 2]).unwrap(), &build_cyclic_product(&[4]).unwrap()));
    }

    #[test]
    fn capacity() {
        assert_eq!(build_cyclic_product(&[32, 17]).unwrap_err(), Error::CapacityExceeded(544));
        let c32 = build_cyclic_product(&[32]).unwrap();
        assert!(matches!(direct_product(&c32, &c32), Err(Error::CapacityExceeded(1024))));
    }

    #[test]
    fn closures() {
        let c4 = build_cyclic_product(&[4]).unwrap();
        assert_eq!(subgroup_closure(&c4, &[2]).unwrap().members(), &[0, 2]);
        let c6 = build_cyclic_product(&[6]).unwrap();
        assert_eq!(subgroup_closure(&c6, &[3]).unwrap().members(), &[0, 3]);
        assert_eq!(subgroup_closure(&c6, &[]).unwrap().members(), &[0]);
        assert!(matches!(subgroup_closure(&c6, &[9]), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn normality_in_s3() {
        let s3 = symmetric_group_s3();
        let a3 = subgroup_closure(&s3, &[1]).unwrap();
        assert_eq!(a3.len(), 3);
        assert!(is_normal(&s3, &a3));
        let t = subgroup_closure(&s3, &[3]).unwrap();
        assert!(!is_normal(&s3, &t));
        assert_eq!(quotient(&s3, &t).unwrap_err(), Error::NotNormal);
        assert_eq!(quotient(&s3, &a3).unwrap().table.order(), 2);
    }

    #[test]
    fn quotients_of_cyclic_groups() {
        let c4 = build_cyclic_product(&[4]).unwrap();
        let h = subgroup_closure(&c4, &[2]).unwrap();
        let q = quotient(&c4, &h).unwrap();
        assert_eq!(q.cosets, vec![vec![0, 2], vec![1, 3]]);
        assert_eq!(q.table.names(), &["H", "gH"]);
        let c6 = build_cyclic_product(&[6]).unwrap();
        let q = quotient(&c6, &subgroup_closure(&c6, &[3]).unwrap()).unwrap();
        assert_eq!(q.transversal, vec![0, 1, 2]);
        assert_eq!(q.table.names(), &["H", "gH", "g^2H"]);
        assert!(isomorphic(&q.table, &build_cyclic_product(&[3]).unwrap()));
        let whole = quotient(&c6, &Subgroup::whole(&c6)).unwrap();
        assert_eq!(whole.table.order(), 1);
    }

    #[test]
    fn products_and_antidiagonal() {
        let c2 = build_cyclic_product(&[2]).unwrap();
        let v4 = direct_product(&c2, &c2).unwrap();
        assert_eq!(v4.order_profile(), vec![1, 2, 2, 2]);
        let c1 = build_cyclic_product(&[1]).unwrap();
        let c4 = build_cyclic_product(&[4]).unwrap();
        assert_eq!(direct_product(&c4, &c1).unwrap(), c4);
        let c4c4 = direct_product(&c4, &c4).unwrap();
        assert_eq!(c4c4.order(), 16);
        let d = antidiagonal(&c4).unwrap();
        let names: Vec<&str> = d.members().iter().map(|&x| c4c4.name(x)).collect();
        assert_eq!(names, vec!["(1,1)", "(g,g^3)", "(g^2,g^2)", "(g^3,g)"]);
        assert!(is_normal(&c4c4, &d));
        assert_eq!(antidiagonal(&c2).unwrap().members(), &[0, 3]);
        assert_eq!(antidiagonal(&c1).unwrap().members(), &[0]);
        assert_eq!(antidiagonal(&symmetric_group_s3()).unwrap_err(), Error::NotAbelian);
    }

    #[test]
    fn rejects_bad_tables() {
        assert!(GroupTable::from_table(vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(GroupTable::from_table(vec![vec![1, 0], vec![0, 1]]).is_err());
        assert!(GroupTable::from_table(vec![vec![0, 1], vec![1, 0]]).is_ok());
    }

    #[test]
    fn subgroup_enumeration() {
        let c4 = build_cyclic_product(&[4]).unwrap();
        assert_eq!(all_subgroups(&c4).len(), 3);
        let v4 = build_cyclic_product(&[2, 2]).unwrap();
        assert_eq!(all_subgroups(&v4).len(), 5);
        assert_eq!(all_subgroups(&symmetric_group_s3()).len(), 6);
    }

    #[test]
    fn lagrange_holds_for_every_subgroup() {
        for g in [build_cyclic_product(&[2, 4]).unwrap(), build_cyclic_product(&[6]).unwrap()] {
            for h in all_subgroups(&g) {
                let q = quotient(&g, &h).unwrap();
                assert_eq!(q.cosets.len() * h.len(), g.order());
            }
        }
    }
}
