//! Finite groups given only by a multiplication table. Used for the computed
//! outer automorphism groups, their subgroups and quotients.

use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{FiniteGroup, Permutation, DEFAULT_ELEMENT_CAP};

/// Search-space limit for [`iso_test`].
pub const DEFAULT_ISO_CAP: usize = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbstractGroup {
    order: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
    orders: Vec<usize>,
    labels: Option<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupSummary {
    pub order: usize,
    pub abelian: bool,
    pub order_histogram: BTreeMap<usize, usize>,
    pub id: String,
}

/// A subgroup as a group in its own right plus its embedding into the
/// ambient group. Element 0 of `group` maps to the ambient identity and the
/// embedding is increasing.
#[derive(Clone, Debug)]
pub struct Subgroup {
    pub group: AbstractGroup,
    pub embedding: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: AbstractGroup,
    /// Coset index of every ambient element.
    pub coset_of: Vec<usize>,
    /// Least ambient element of each coset.
    pub reps: Vec<usize>,
}

impl AbstractGroup {
    /// Validates identity at 0, the Latin-square property and associativity.
    pub fn from_table(rows: Vec<Vec<usize>>, labels: Option<Vec<String>>) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::malformed("empty multiplication table"));
        }
        if let Some(l) = &labels {
            if l.len() != n {
                return Err(Error::malformed("label count does not match order"));
            }
        }
        let mut table = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::malformed("table is not square over 0..n"));
            }
            table.extend_from_slice(row);
        }
        for a in 0..n {
            if table[a] != a || table[a * n] != a {
                return Err(Error::malformed("element 0 is not the identity"));
            }
            let mut row_seen = vec![false; n];
            let mut col_seen = vec![false; n];
            for b in 0..n {
                row_seen[table[a * n + b]] = true;
                col_seen[table[b * n + a]] = true;
            }
            if row_seen.contains(&false) || col_seen.contains(&false) {
                return Err(Error::malformed("table is not a Latin square"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a * n + b];
                for c in 0..n {
                    if table[ab * n + c] != table[a * n + table[b * n + c]] {
                        return Err(Error::malformed("table is not associative"));
                    }
                }
            }
        }
        let mut g = Self::from_flat_unchecked(n, table);
        g.labels = labels;
        Ok(g)
    }

    pub(crate) fn from_flat_unchecked(order: usize, table: Vec<usize>) -> Self {
        let mut inv = vec![0; order];
        for a in 0..order {
            inv[a] = (0..order).find(|&b| table[a * order + b] == 0).expect("Latin square");
        }
        let orders = (0..order)
            .map(|a| {
                let mut x = a;
                let mut k = 1;
                while x != 0 {
                    x = table[x * order + a];
                    k += 1;
                }
                k
            })
            .collect();
        AbstractGroup { order, table, inv, orders, labels: None }
    }

    pub fn from_finite(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut table = Vec::with_capacity(n * n);
        for a in g.ids() {
            for b in g.ids() {
                table.push(g.mul(a, b).idx());
            }
        }
        let mut abs = Self::from_flat_unchecked(n, table);
        abs.labels = Some(g.ids().map(|a| g.element(a).to_string()).collect());
        abs
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.order);
        self.labels = Some(labels);
        self
    }

    pub fn trivial() -> Self {
        Self::from_flat_unchecked(1, vec![0])
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0);
        let table = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
        Self::from_flat_unchecked(n, table)
    }

    /// Dihedral group of order `2n`, `n >= 3`, as symmetries of an n-gon.
    pub fn dihedral(n: usize) -> Self {
        assert!(n >= 3);
        let rot = Permutation::new((0..n as u32).map(|i| (i + 1) % n as u32).collect()).unwrap();
        let refl = Permutation::new((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect()).unwrap();
        let g = FiniteGroup::generate(&format!("D{n}"), n, vec![rot, refl], DEFAULT_ELEMENT_CAP).unwrap();
        Self::from_finite(&g)
    }

    pub fn symmetric(n: usize) -> Self {
        assert!(n >= 1);
        if n == 1 {
            return Self::trivial();
        }
        let cycle = Permutation::new((0..n as u32).map(|i| (i + 1) % n as u32).collect()).unwrap();
        let mut swap: Vec<u32> = (0..n as u32).collect();
        swap.swap(0, 1);
        let swap = Permutation::new(swap).unwrap();
        let g = FiniteGroup::generate(&format!("S{n}"), n, vec![cycle, swap], DEFAULT_ELEMENT_CAP).unwrap();
        Self::from_finite(&g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn element_order(&self, a: usize) -> usize {
        self.orders[a]
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    pub fn commute(&self, a: usize, b: usize) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (0..a).all(|b| self.commute(a, b)))
    }

    pub fn order_histogram(&self) -> BTreeMap<usize, usize> {
        let mut h = BTreeMap::new();
        for &o in &self.orders {
            *h.entry(o).or_insert(0) += 1;
        }
        h
    }

    pub fn summary(&self) -> GroupSummary {
        GroupSummary {
            order: self.order,
            abelian: self.is_abelian(),
            order_histogram: self.order_histogram(),
            id: self.identify(),
        }
    }

    /// Names the group if it is trivial, cyclic, symmetric of degree at most
    /// 5, or dihedral.
    pub fn identify(&self) -> String {
        let n = self.order;
        if n == 1 {
            return "1".into();
        }
        if self.orders.contains(&n) {
            return format!("C{n}");
        }
        for (k, fact) in [(3, 6), (4, 24), (5, 120)] {
            if n == fact && iso_test(self, &Self::symmetric(k)).ok().flatten().is_some() {
                return format!("S{k}");
            }
        }
        if n.is_multiple_of(2) && n >= 6 && !self.is_abelian() && self.orders.contains(&(n / 2)) {
            let d = Self::dihedral(n / 2);
            if iso_test(self, &d).ok().flatten().is_some() {
                return format!("D{}", n / 2);
            }
        }
        let kind = if self.is_abelian() { "abelian" } else { "nonabelian" };
        format!("unidentified {kind} group of order {n}")
    }

    /// Elements of the subgroup generated by `gens`, sorted.
    pub fn span(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order).filter(|&x| seen[x]).collect()
    }

    /// Wraps a subset as a subgroup, checking closure.
    pub fn subgroup(&self, elements: &[usize]) -> Result<Subgroup> {
        let mut embedding = elements.to_vec();
        embedding.sort_unstable();
        embedding.dedup();
        if embedding.first() != Some(&0) {
            return Err(Error::malformed("subgroup must contain the identity"));
        }
        let mut local = vec![usize::MAX; self.order];
        for (i, &x) in embedding.iter().enumerate() {
            local[x] = i;
        }
        let m = embedding.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &embedding {
            for &b in &embedding {
                let c = local[self.mul(a, b)];
                if c == usize::MAX {
                    return Err(Error::malformed("subset is not closed under multiplication"));
                }
                table.push(c);
            }
        }
        let mut group = Self::from_flat_unchecked(m, table);
        if let Some(labels) = &self.labels {
            group.labels = Some(embedding.iter().map(|&x| labels[x].clone()).collect());
        }
        Ok(Subgroup { group, embedding })
    }

    pub fn centralizer(&self, x: usize) -> Subgroup {
        let elems: Vec<usize> = (0..self.order).filter(|&c| self.commute(c, x)).collect();
        self.subgroup(&elems).expect("centralizers are subgroups")
    }

    pub fn cyclic_closure(&self, x: usize) -> Subgroup {
        let mut elems = vec![0];
        let mut y = x;
        while y != 0 {
            elems.push(y);
            y = self.mul(y, x);
        }
        self.subgroup(&elems).expect("cyclic subgroup")
    }

    pub fn is_normal(&self, elements: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &x in elements {
            member[x] = true;
        }
        (0..self.order).all(|c| elements.iter().all(|&n| member[self.mul(self.mul(self.inv(c), n), c)]))
    }

    pub fn is_central(&self, elements: &[usize]) -> bool {
        elements.iter().all(|&n| (0..self.order).all(|c| self.commute(c, n)))
    }

    /// Some `c` with `c⁻¹·a·c = b`, smallest first.
    pub fn conjugacy_test(&self, a: usize, b: usize) -> Option<usize> {
        if self.orders[a] != self.orders[b] {
            return None;
        }
        (0..self.order).find(|&c| self.mul(self.mul(self.inv(c), a), c) == b)
    }

    /// Coset group `self / normal`; cosets are numbered by their least
    /// element, so the identity coset is 0.
    pub fn quotient(&self, normal: &[usize]) -> Result<Quotient> {
        let sub = self.subgroup(normal)?;
        if !self.is_normal(&sub.embedding) {
            return Err(Error::NotNormal);
        }
        let mut coset_of = vec![usize::MAX; self.order];
        let mut reps = Vec::new();
        for x in 0..self.order {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &n in &sub.embedding {
                coset_of[self.mul(x, n)] = c;
            }
        }
        let m = reps.len();
        let mut table = Vec::with_capacity(m * m);
        for &a in &reps {
            for &b in &reps {
                table.push(coset_of[self.mul(a, b)]);
            }
        }
        Ok(Quotient {
            group: Self::from_flat_unchecked(m, table),
            coset_of,
            reps,
        })
    }

    /// Greedy generating set: highest-order elements first, skipping any
    /// already in the span.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut candidates: Vec<usize> = (1..self.order).collect();
        candidates.sort_by_key(|&x| (std::cmp::Reverse(self.orders[x]), x));
        let mut gens = Vec::new();
        let mut span_len = 1;
        let mut in_span = vec![false; self.order];
        in_span[0] = true;
        for x in candidates {
            if span_len == self.order {
                break;
            }
            if in_span[x] {
                continue;
            }
            gens.push(x);
            let span = self.span(&gens);
            span_len = span.len();
            for y in span {
                in_span[y] = true;
            }
        }
        gens
    }

    /// Checks that `map` is a homomorphism into `target` on every pair.
    pub fn is_homomorphism(&self, target: &AbstractGroup, map: &[usize]) -> bool {
        map.len() == self.order
            && (0..self.order)
                .all(|a| (0..self.order).all(|b| map[self.mul(a, b)] == target.mul(map[a], map[b])))
    }
}

/// Returns an isomorphism `a -> b` as an image table, or `None`.
pub fn iso_test(a: &AbstractGroup, b: &AbstractGroup) -> Result<Option<Vec<usize>>> {
    iso_test_with_cap(a, b, DEFAULT_ISO_CAP)
}

pub fn iso_test_with_cap(a: &AbstractGroup, b: &AbstractGroup, cap: usize) -> Result<Option<Vec<usize>>> {
    if a.order != b.order || a.order_histogram() != b.order_histogram() || a.is_abelian() != b.is_abelian() {
        return Ok(None);
    }
    let n = a.order;
    if n == 1 {
        return Ok(Some(vec![0]));
    }
    let gens = a.generating_set();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (0..n).filter(|&y| b.orders[y] == a.orders[g]).collect())
        .collect();
    let space = candidates.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len()));
    match space {
        Some(s) if s <= cap => {}
        _ => return Err(Error::CapExceeded { what: "isomorphism search space", cap }),
    }

    // Spanning tree of `a` over the chosen generators.
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut visited = vec![false; n];
    visited[0] = true;
    let mut order = vec![0];
    let mut queue = VecDeque::from([0]);
    while let Some(x) = queue.pop_front() {
        for (j, &g) in gens.iter().enumerate() {
            let y = a.mul(x, g);
            if !visited[y] {
                visited[y] = true;
                parent[y] = Some((x, j));
                order.push(y);
                queue.push_back(y);
            }
        }
    }

    let mut images = vec![0; gens.len()];
    let mut map = vec![0; n];
    Ok(search_images(a, b, &gens, &candidates, &parent, &order, 0, &mut images, &mut map))
}

#[allow(clippy::too_many_arguments)]
fn search_images(
    a: &AbstractGroup,
    b: &AbstractGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    parent: &[Option<(usize, usize)>],
    order: &[usize],
    depth: usize,
    images: &mut Vec<usize>,
    map: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    if depth == gens.len() {
        return extend_homomorphism(a, b, gens, images, parent, order, map).then(|| map.clone());
    }
    for &y in &candidates[depth] {
        if images[..depth].contains(&y) {
            continue;
        }
        images[depth] = y;
        if let Some(found) = search_images(a, b, gens, candidates, parent, order, depth + 1, images, map) {
            return Some(found);
        }
    }
    None
}

fn extend_homomorphism(
    a: &AbstractGroup,
    b: &AbstractGroup,
    gens: &[usize],
    images: &[usize],
    parent: &[Option<(usize, usize)>],
    order: &[usize],
    map: &mut [usize],
) -> bool {
    map[0] = 0;
    for &x in &order[1..] {
        let (p, j) = parent[x].expect("tree");
        map[x] = b.mul(map[p], images[j]);
    }
    let mut hit = vec![false; b.order];
    for &y in map.iter() {
        if hit[y] {
            return false;
        }
        hit[y] = true;
    }
    // Respecting right multiplication by each generator implies the full law.
    (0..a.order).all(|x| gens.iter().enumerate().all(|(j, &g)| map[a.mul(x, g)] == b.mul(map[x], images[j])))
}
