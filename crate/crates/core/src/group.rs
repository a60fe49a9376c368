//! Finite groups given by multiplication tables.
//!
//! Element `0` is always the neutral element. Every group-theoretic query
//! used downstream (subgroups, normalizers, centrality, cosets) is answered
//! from the table alone.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on group orders accepted by [`build_group`].
pub const DEFAULT_ORDER_CAP: usize = 64;

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    labels: Vec<String>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

impl FiniteGroup {
    /// Validates a raw table. Element 0 must be the neutral element.
    pub fn from_table(name: impl Into<String>, mul: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = mul.len();
        if n == 0 {
            return Err(Error::TableInvalid("empty table".into()));
        }
        let mut flat = Vec::with_capacity(n * n);
        for (i, row) in mul.iter().enumerate() {
            if row.len() != n {
                return Err(Error::TableInvalid(format!("row {i} has length {} (expected {n})", row.len())));
            }
            for &x in row {
                if x >= n {
                    return Err(Error::TableInvalid(format!("entry {x} in row {i} out of range")));
                }
                flat.push(x);
            }
        }
        for x in 0..n {
            if flat[x] != x || flat[x * n] != x {
                return Err(Error::TableInvalid(format!("element 0 is not neutral (fails at {x})")));
            }
        }
        let mut inv = vec![usize::MAX; n];
        for x in 0..n {
            match (0..n).find(|&y| flat[x * n + y] == 0) {
                Some(y) if flat[y * n + x] == 0 => inv[x] = y,
                _ => return Err(Error::TableInvalid(format!("element {x} has no two-sided inverse"))),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = flat[a * n + b];
                for c in 0..n {
                    if flat[ab * n + c] != flat[a * n + flat[b * n + c]] {
                        return Err(Error::TableInvalid(format!("associativity fails at ({a},{b},{c})")));
                    }
                }
            }
        }
        let labels = match labels {
            Some(l) if l.len() == n => l,
            Some(l) => {
                return Err(Error::TableInvalid(format!("{} labels for {n} elements", l.len())));
            }
            None => (0..n).map(|i| i.to_string()).collect(),
        };
        Ok(Self { name: name.into(), order: n, mul: flat, inv, labels })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// Looks an element up by label or by decimal identifier.
    pub fn element(&self, token: &str) -> Option<usize> {
        if let Some(i) = self.labels.iter().position(|l| l == token) {
            return Some(i);
        }
        token.parse::<usize>().ok().filter(|&i| i < self.order)
    }

    /// `g * x * g^-1`
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
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

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).map(|a| self.element_order(a)).fold(1, num_integer::lcm)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub(crate) fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order)
    }
}

/// A subgroup, stored as the sorted list of member identifiers.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<usize>,
    pos: Vec<u32>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl std::hash::Hash for Subgroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.members.hash(state)
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.members.len(), &self.members).cmp(&(other.members.len(), &other.members))
    }
}

const ABSENT: u32 = u32::MAX;

impl Subgroup {
    /// Checks closure under multiplication and inversion.
    pub fn new(g: &FiniteGroup, members: impl IntoIterator<Item = usize>) -> Result<Self> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&x) = set.iter().find(|&&x| x >= g.order()) {
            return Err(Error::NotASubgroup(format!("element {x} is not in {}", g.name())));
        }
        if !set.contains(&0) {
            return Err(Error::NotASubgroup("missing the neutral element".into()));
        }
        for &a in &set {
            if !set.contains(&g.inv(a)) {
                return Err(Error::NotASubgroup(format!("not closed under inverse at {a}")));
            }
            for &b in &set {
                if !set.contains(&g.mul(a, b)) {
                    return Err(Error::NotASubgroup(format!("not closed under product at ({a},{b})")));
                }
            }
        }
        Ok(Self::from_sorted_unchecked(g.order(), set.into_iter().collect()))
    }

    pub(crate) fn from_sorted_unchecked(parent_order: usize, members: Vec<usize>) -> Self {
        let mut pos = vec![ABSENT; parent_order];
        for (i, &m) in members.iter().enumerate() {
            pos[m] = i as u32;
        }
        Self { members, pos }
    }

    pub fn full(g: &FiniteGroup) -> Self {
        Self::from_sorted_unchecked(g.order(), g.elements().collect())
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::from_sorted_unchecked(g.order(), vec![0])
    }

    /// Subgroup generated by `gens`.
    pub fn generated(g: &FiniteGroup, gens: &[usize]) -> Self {
        let mut set: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &s in gens {
                let y = g.mul(x, s);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Self::from_sorted_unchecked(g.order(), set.into_iter().collect())
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn parent_order(&self) -> usize {
        self.pos.len()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        x < self.pos.len() && self.pos[x] != ABSENT
    }

    /// Position of `x` inside [`Subgroup::members`].
    #[inline]
    pub fn position(&self, x: usize) -> Option<usize> {
        match self.pos.get(x) {
            Some(&p) if p != ABSENT => Some(p as usize),
            _ => None,
        }
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&x| other.contains(x))
    }

    /// `x H x^-1`
    pub fn conjugate(&self, g: &FiniteGroup, x: usize) -> Subgroup {
        let mut m: Vec<usize> = self.members.iter().map(|&h| g.conj(x, h)).collect();
        m.sort_unstable();
        Self::from_sorted_unchecked(g.order(), m)
    }

    /// Exponent of the subgroup as an abstract group.
    pub fn exponent(&self, g: &FiniteGroup) -> usize {
        self.members.iter().map(|&a| g.element_order(a)).fold(1, num_integer::lcm)
    }

    pub(crate) fn check_in(&self, g: &FiniteGroup) -> Result<()> {
        if self.parent_order() != g.order() {
            return Err(Error::NotASubgroup(format!(
                "subgroup of a group of order {} used in {}",
                self.parent_order(),
                g
            )));
        }
        Ok(())
    }
}

/// Family tags for the groups the engine knows how to build.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "family")]
pub enum GroupSpec {
    Cyclic {
        n: usize,
    },
    /// Dihedral group of order `2n` (symmetries of a regular `n`-gon).
    Dihedral {
        n: usize,
    },
    Quaternion8,
    Symmetric {
        n: usize,
    },
    Product {
        factors: Vec<GroupSpec>,
    },
    Explicit {
        name: String,
        mul: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    },
}

impl GroupSpec {
    /// Parses the textual syntax `C4`, `C2xC2`, `D4`, `Q8`, `S3`,
    /// `table:@file.json`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if let Some(path) = text.strip_prefix("table:@") {
            return Self::from_file(path);
        }
        if text.is_empty() {
            return Err(Error::SpecMalformed("empty group spec".into()));
        }
        let parts: Vec<&str> = text.split(['x', '×']).collect();
        if parts.len() > 1 {
            let factors = parts.iter().map(|p| Self::parse_atom(p)).collect::<Result<Vec<_>>>()?;
            return Ok(GroupSpec::Product { factors });
        }
        Self::parse_atom(text)
    }

    fn parse_atom(text: &str) -> Result<Self> {
        let bad = || Error::SpecMalformed(format!("cannot parse group `{text}`"));
        let text = text.trim();
        if text == "Q8" {
            return Ok(GroupSpec::Quaternion8);
        }
        let (head, tail) = text.split_at(text.chars().next().ok_or_else(bad)?.len_utf8());
        let n: usize = tail.parse().map_err(|_| bad())?;
        match head {
            "C" | "Z" if n >= 1 => Ok(GroupSpec::Cyclic { n }),
            "D" if n >= 2 => Ok(GroupSpec::Dihedral { n }),
            "S" if (1..=5).contains(&n) => Ok(GroupSpec::Symmetric { n }),
            _ => Err(bad()),
        }
    }

    fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text =
            std::fs::read_to_string(path).map_err(|e| Error::SpecMalformed(format!("{}: {e}", path.display())))?;
        let file: crate::io::GroupJson =
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        if file.order != file.mul.len() {
            return Err(Error::SpecMalformed(format!("order {} but {} rows", file.order, file.mul.len())));
        }
        Ok(GroupSpec::Explicit { name: file.name, mul: file.mul, labels: file.labels })
    }

    pub fn name(&self) -> String {
        match self {
            GroupSpec::Cyclic { n } => format!("C{n}"),
            GroupSpec::Dihedral { n } => format!("D{n}"),
            GroupSpec::Quaternion8 => "Q8".into(),
            GroupSpec::Symmetric { n } => format!("S{n}"),
            GroupSpec::Product { factors } => factors.iter().map(|f| f.name()).collect::<Vec<_>>().join("x"),
            GroupSpec::Explicit { name, .. } => name.clone(),
        }
    }

    fn predicted_order(&self) -> Option<usize> {
        Some(match self {
            GroupSpec::Cyclic { n } => *n,
            GroupSpec::Dihedral { n } => 2 * n,
            GroupSpec::Quaternion8 => 8,
            GroupSpec::Symmetric { n } => (1..=*n).product(),
            GroupSpec::Product { factors } => {
                factors.iter().try_fold(1usize, |acc, f| acc.checked_mul(f.predicted_order()?))?
            }
            GroupSpec::Explicit { mul, .. } => mul.len(),
        })
    }
}

pub fn build_group(spec: &GroupSpec) -> Result<Arc<FiniteGroup>> {
    build_group_with_cap(spec, DEFAULT_ORDER_CAP)
}

pub fn build_group_with_cap(spec: &GroupSpec, cap: usize) -> Result<Arc<FiniteGroup>> {
    let order = spec.predicted_order().unwrap_or(usize::MAX);
    if order > cap {
        return Err(Error::OrderCapExceeded { order, cap });
    }
    let (mul, labels) = raw_table(spec)?;
    FiniteGroup::from_table(spec.name(), mul, Some(labels)).map(Arc::new)
}

type RawTable = (Vec<Vec<usize>>, Vec<String>);

fn raw_table(spec: &GroupSpec) -> Result<RawTable> {
    match spec {
        GroupSpec::Cyclic { n } => {
            if *n == 0 {
                return Err(Error::SpecMalformed("C0".into()));
            }
            let mul = (0..*n).map(|i| (0..*n).map(|j| (i + j) % n).collect()).collect();
            Ok((mul, (0..*n).map(|i| i.to_string()).collect()))
        }
        GroupSpec::Dihedral { n } => {
            let n = *n;
            if n < 2 {
                return Err(Error::SpecMalformed("dihedral needs n >= 2".into()));
            }
            // r^a s^b  ->  a + n*b
            let id = |a: usize, b: usize| a % n + n * (b % 2);
            let mut mul = vec![vec![0; 2 * n]; 2 * n];
            for (x, row) in mul.iter_mut().enumerate() {
                let (a, b) = (x % n, x / n);
                for (y, cell) in row.iter_mut().enumerate() {
                    let (c, d) = (y % n, y / n);
                    let rot = if b == 0 { a + c } else { a + n - c };
                    *cell = id(rot, b + d);
                }
            }
            let labels = (0..2 * n)
                .map(|x| {
                    let (a, b) = (x % n, x / n);
                    match (a, b) {
                        (0, 0) => "e".to_string(),
                        (0, 1) => "s".to_string(),
                        (1, 0) => "r".to_string(),
                        (1, 1) => "rs".to_string(),
                        (a, 0) => format!("r{a}"),
                        (a, _) => format!("r{a}s"),
                    }
                })
                .collect();
            Ok((mul, labels))
        }
        GroupSpec::Quaternion8 => {
            // units (sign, axis) with axis 0=1, 1=i, 2=j, 3=k; id = 2*axis + (sign<0)
            let prod = |p: usize, q: usize| -> (bool, usize) {
                match (p, q) {
                    (0, q) => (false, q),
                    (p, 0) => (false, p),
                    (p, q) if p == q => (true, 0),
                    (1, 2) => (false, 3),
                    (2, 3) => (false, 1),
                    (3, 1) => (false, 2),
                    (2, 1) => (true, 3),
                    (3, 2) => (true, 1),
                    (1, 3) => (true, 2),
                    _ => unreachable!(),
                }
            };
            let mut mul = vec![vec![0; 8]; 8];
            for (x, row) in mul.iter_mut().enumerate() {
                for (y, cell) in row.iter_mut().enumerate() {
                    let (neg, axis) = prod(x / 2, y / 2);
                    let sign = (x % 2 == 1) ^ (y % 2 == 1) ^ neg;
                    *cell = 2 * axis + sign as usize;
                }
            }
            let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];
            Ok((mul, names.iter().map(|s| s.to_string()).collect()))
        }
        GroupSpec::Symmetric { n } => symmetric_table(*n),
        GroupSpec::Product { factors } => {
            if factors.is_empty() {
                return Err(Error::SpecMalformed("empty product".into()));
            }
            let tables = factors.iter().map(raw_table).collect::<Result<Vec<_>>>()?;
            let mut mul = vec![vec![0usize]];
            let mut labels: Vec<Vec<String>> = vec![vec![]];
            for (t, l) in tables {
                let m = t.len();
                let k = mul.len();
                let mut next = vec![vec![0; k * m]; k * m];
                for x in 0..k * m {
                    for y in 0..k * m {
                        next[x][y] = mul[x / m][y / m] * m + t[x % m][y % m];
                    }
                }
                mul = next;
                labels = labels
                    .iter()
                    .flat_map(|prefix| {
                        l.iter().map(move |s| {
                            let mut p = prefix.clone();
                            p.push(s.clone());
                            p
                        })
                    })
                    .collect();
            }
            let labels = labels.into_iter().map(|p| format!("({})", p.join(","))).collect();
            Ok((mul, labels))
        }
        GroupSpec::Explicit { mul, labels, .. } => {
            let labels = labels.clone().unwrap_or_else(|| (0..mul.len()).map(|i| i.to_string()).collect());
            Ok((mul.clone(), labels))
        }
    }
}

/// Permutations of `{1..n}` in lexicographic order (identity first);
/// product is composition `(pq)(x) = p(q(x))`.
fn symmetric_table(n: usize) -> Result<RawTable> {
    if !(1..=5).contains(&n) {
        return Err(Error::SpecMalformed(format!("S{n} is outside the supported range 1..=5")));
    }
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        perms.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else { break };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
    let mul = perms.iter().map(|p| perms.iter().map(|q| index(&q.iter().map(|&x| p[x]).collect())).collect()).collect();
    let labels = perms.iter().map(|p| cycle_notation(p)).collect();
    Ok((mul, labels))
}

fn cycle_notation(p: &[usize]) -> String {
    let mut seen = vec![false; p.len()];
    let mut out = String::new();
    for start in 0..p.len() {
        if seen[start] || p[start] == start {
            continue;
        }
        out.push('(');
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            out.push_str(&(x + 1).to_string());
            x = p[x];
        }
        out.push(')');
    }
    if out.is_empty() {
        "e".into()
    } else {
        out
    }
}

/// All subgroups, sorted by size and then lexicographically by members.
pub fn enumerate_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    // one generator per cyclic subgroup
    let cyclic: Vec<(Subgroup, usize)> = {
        let mut map: BTreeMap<Subgroup, usize> = BTreeMap::new();
        for x in g.elements() {
            map.entry(Subgroup::generated(g, &[x])).or_insert(x);
        }
        map.into_iter().collect()
    };
    let mut seen: HashSet<Vec<usize>> = cyclic.iter().map(|s| s.0.members.clone()).collect();
    let mut all: Vec<Subgroup> = cyclic.iter().map(|s| s.0.clone()).collect();
    let mut i = 0;
    while i < all.len() {
        let current = all[i].clone();
        for (c, x) in &cyclic {
            if c.is_subset_of(&current) {
                continue;
            }
            let mut gens = current.members.clone();
            gens.push(*x);
            let joined = Subgroup::generated(g, &gens);
            if seen.insert(joined.members.clone()) {
                all.push(joined);
            }
        }
        i += 1;
    }
    all.sort();
    all
}

pub fn normalizer(g: &FiniteGroup, h: &Subgroup) -> Result<Subgroup> {
    h.check_in(g)?;
    let members = g.elements().filter(|&x| h.members.iter().all(|&y| h.contains(g.conj(g.inv(x), y)))).collect();
    Ok(Subgroup::from_sorted_unchecked(g.order(), members))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationReport {
    pub is_normal: bool,
    pub is_central: bool,
    pub index: usize,
    /// Left-coset representatives, smallest identifier per coset.
    pub transversal: Vec<usize>,
}

pub fn subgroup_relations(g: &FiniteGroup, h: &Subgroup) -> Result<RelationReport> {
    h.check_in(g)?;
    let is_central = h.members.iter().all(|&a| g.elements().all(|x| g.mul(a, x) == g.mul(x, a)));
    let is_normal = is_central || g.elements().all(|x| h.members.iter().all(|&a| h.contains(g.conj(x, a))));
    Ok(RelationReport {
        is_normal,
        is_central,
        index: g.order() / h.len(),
        transversal: left_transversal(g, h, g.elements()),
    })
}

/// Smallest representative of each left coset `xH` for `x` in `within`.
pub(crate) fn left_transversal(g: &FiniteGroup, h: &Subgroup, within: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut covered = vec![false; g.order()];
    let mut reps = Vec::new();
    for x in within {
        if covered[x] {
            continue;
        }
        reps.push(x);
        for &a in h.members() {
            covered[g.mul(x, a)] = true;
        }
    }
    reps
}

/// True iff every subgroup is normal (abelian or Hamiltonian groups).
pub fn all_subgroups_normal(g: &FiniteGroup) -> bool {
    if g.is_abelian() {
        return true;
    }
    // Every subgroup is normal iff every cyclic subgroup is.
    g.elements().all(|x| {
        let c = Subgroup::generated(g, &[x]);
        g.elements().all(|y| c.contains(g.conj(y, x)))
    })
}
