//! Automorphisms of a finite permutation group, Aut(H), Inn(H) and the
//! outer automorphism group Out(H).
//!
//! Composition follows the left-to-right convention of the rest of the
//! crate: `a.then(b)` applies `a` first. The inner automorphism by `g` is
//! `h ↦ g⁻¹·h·g`.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::abstract_group::{AbstractGroup, Subgroup};
use crate::error::{Error, Result};
use crate::par;
use crate::perm::{ElementId, FiniteGroup};

pub use crate::abstract_group::{iso_test, Quotient};

/// Default limit on the generator-image search space of [`compute_aut`].
pub const DEFAULT_ENUM_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Automorphism {
    table: Vec<ElementId>,
}

/// On-disk automorphism: one signed word per group generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutomorphismFile {
    pub images: Vec<Vec<i32>>,
}

impl Automorphism {
    /// Checks bijectivity and the homomorphism law on every pair.
    pub fn from_table(h: &FiniteGroup, table: Vec<ElementId>) -> Result<Self> {
        let n = h.order();
        if table.len() != n {
            return Err(Error::NotAutomorphism(format!("table has {} entries, group has {n}", table.len())));
        }
        let mut hit = vec![false; n];
        for &x in &table {
            if x.idx() >= n || hit[x.idx()] {
                return Err(Error::NotAutomorphism("table is not a bijection".into()));
            }
            hit[x.idx()] = true;
        }
        for a in h.ids() {
            for b in h.ids() {
                if table[h.mul(a, b).idx()] != h.mul(table[a.idx()], table[b.idx()]) {
                    return Err(Error::NotAutomorphism(format!(
                        "image of {a}·{b} is not the product of images"
                    )));
                }
            }
        }
        Ok(Automorphism { table })
    }

    pub(crate) fn from_table_unchecked(table: Vec<ElementId>) -> Self {
        Automorphism { table }
    }

    /// Extends generator images along the group's spanning tree and
    /// validates the result.
    pub fn from_generator_images(h: &FiniteGroup, images: &[ElementId]) -> Result<Self> {
        if images.len() != h.generator_ids().len() {
            return Err(Error::NotAutomorphism(format!(
                "{} generator images given, group has {} generators",
                images.len(),
                h.generator_ids().len()
            )));
        }
        if images.iter().any(|x| x.idx() >= h.order()) {
            return Err(Error::NotAutomorphism("image id out of range".into()));
        }
        let table = extend_images(h, images);
        Self::from_table(h, table)
    }

    pub fn from_file(h: &FiniteGroup, file: &AutomorphismFile) -> Result<Self> {
        let images = file
            .images
            .iter()
            .map(|w| h.eval_word(w))
            .collect::<Result<Vec<_>>>()?;
        Self::from_generator_images(h, &images)
    }

    pub fn to_file(&self, h: &FiniteGroup) -> AutomorphismFile {
        AutomorphismFile {
            images: h
                .generator_ids()
                .iter()
                .map(|&g| h.word_for(self.apply(g)).iter().map(|&j| j as i32 + 1).collect())
                .collect(),
        }
    }

    pub fn identity(h: &FiniteGroup) -> Self {
        Automorphism { table: h.ids().collect() }
    }

    pub fn table(&self) -> &[ElementId] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, x: ElementId) -> ElementId {
        self.table[x.idx()]
    }

    /// `self` first, then `other`.
    pub fn then(&self, other: &Automorphism) -> Automorphism {
        Automorphism {
            table: self.table.iter().map(|&x| other.table[x.idx()]).collect(),
        }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut table = vec![ElementId(0); self.table.len()];
        for (i, &x) in self.table.iter().enumerate() {
            table[x.idx()] = ElementId::from(i);
        }
        Automorphism { table }
    }

    /// Integer power; negative exponents use the inverse.
    pub fn pow(&self, k: i64) -> Automorphism {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut result = Automorphism::from_table_unchecked((0..self.table.len()).map(ElementId::from).collect());
        for _ in 0..k.unsigned_abs() {
            result = result.then(&base);
        }
        result
    }

    pub fn is_identity(&self) -> bool {
        self.table.iter().enumerate().all(|(i, x)| x.idx() == i)
    }

    pub fn order(&self) -> usize {
        let mut x = self.clone();
        let mut k = 1;
        while !x.is_identity() {
            x = x.then(self);
            k += 1;
        }
        k
    }
}

pub fn parse_automorphism(h: &FiniteGroup, text: &str) -> Result<Automorphism> {
    let file: AutomorphismFile = serde_json::from_str(text)?;
    Automorphism::from_file(h, &file)
}

fn extend_images(h: &FiniteGroup, images: &[ElementId]) -> Vec<ElementId> {
    let mut table = vec![ElementId(0); h.order()];
    for x in h.ids().skip(1) {
        let (p, j) = h.parent(x).expect("non-identity has a parent");
        table[x.idx()] = h.mul(table[p.idx()], images[j]);
    }
    table
}

/// The inner automorphism `h ↦ g⁻¹·h·g`.
pub fn inner(h: &FiniteGroup, g: ElementId) -> Automorphism {
    Automorphism {
        table: h.ids().map(|x| h.conjugate(x, g)).collect(),
    }
}

pub fn compute_aut(h: &FiniteGroup) -> Result<Vec<Automorphism>> {
    compute_aut_with_cap(h, DEFAULT_ENUM_CAP)
}

/// All automorphisms of `h`, sorted by table.
///
/// Backtracks over generator images, restricted to elements with the same
/// order and conjugacy-class size, with pairwise product-order pruning. Each
/// full assignment is extended along the spanning tree and validated.
/// `cap` bounds the unpruned product of candidate-list sizes.
pub fn compute_aut_with_cap(h: &FiniteGroup, cap: usize) -> Result<Vec<Automorphism>> {
    let gens = h.generator_ids();
    let class_size: Vec<usize> = h.ids().map(|x| h.conjugacy_class_size(x)).collect();
    let candidates: Vec<Vec<ElementId>> = gens
        .iter()
        .map(|&g| {
            h.ids()
                .filter(|&y| h.element_order(y) == h.element_order(g) && class_size[y.idx()] == class_size[g.idx()])
                .collect()
        })
        .collect();
    let space = candidates.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len()));
    match space {
        Some(s) if s <= cap => {}
        _ => return Err(Error::CapExceeded { what: "automorphism search space", cap }),
    }

    let search = AutSearch { h, gens, candidates: &candidates };
    let mut found = par::flat_map(&candidates[0], |&first| {
        let mut images = vec![first];
        let mut out = Vec::new();
        search.descend(&mut images, &mut out);
        out
    });
    found.sort();
    Ok(found)
}

struct AutSearch<'a> {
    h: &'a FiniteGroup,
    gens: &'a [ElementId],
    candidates: &'a [Vec<ElementId>],
}

impl AutSearch<'_> {
    fn descend(&self, images: &mut Vec<ElementId>, out: &mut Vec<Automorphism>) {
        let depth = images.len();
        if depth == self.gens.len() {
            if let Some(a) = self.complete(images) {
                out.push(a);
            }
            return;
        }
        let h = self.h;
        'next: for &y in &self.candidates[depth] {
            for (i, &image) in images.iter().enumerate().take(depth) {
                let (gi, gd) = (self.gens[i], self.gens[depth]);
                if (gi == gd) != (image == y) {
                    continue 'next;
                }
                if h.element_order(h.mul(gi, gd)) != h.element_order(h.mul(image, y)) {
                    continue 'next;
                }
            }
            images.push(y);
            self.descend(images, out);
            images.pop();
        }
    }

    fn complete(&self, images: &[ElementId]) -> Option<Automorphism> {
        let h = self.h;
        let table = extend_images(h, images);
        let mut hit = vec![false; h.order()];
        for &x in &table {
            if hit[x.idx()] {
                return None;
            }
            hit[x.idx()] = true;
        }
        let consistent = h.ids().all(|x| {
            self.gens
                .iter()
                .zip(images)
                .all(|(&g, &img)| table[h.mul(x, g).idx()] == h.mul(table[x.idx()], img))
        });
        if !consistent {
            return None;
        }
        Automorphism::from_table(h, table).ok()
    }
}

/// An automorphism modulo inner automorphisms, held by its canonical
/// representative (the least table in the coset).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OuterClass {
    rep: Automorphism,
}

impl OuterClass {
    pub fn rep(&self) -> &Automorphism {
        &self.rep
    }
}

/// Out(H) = Aut(H)/Inn(H) as an abstract group. Element `i` is the class
/// whose canonical representative is `reps[i]`; classes are ordered by
/// representative, so the identity class is 0. The product of classes `a`
/// and `b` is the class of `rep(a).then(rep(b))`.
#[derive(Clone, Debug)]
pub struct OutGroup {
    group: AbstractGroup,
    reps: Vec<Automorphism>,
    inner: Vec<Automorphism>,
    class_by_table: HashMap<Vec<ElementId>, usize>,
    aut_order: usize,
}

pub fn project_out(h: &FiniteGroup, auts: &[Automorphism]) -> Result<OutGroup> {
    OutGroup::project(h, auts)
}

impl OutGroup {
    pub fn project(h: &FiniteGroup, auts: &[Automorphism]) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut inner_auts: Vec<Automorphism> =
            h.ids().map(|g| inner(h, g)).filter(|a| seen.insert(a.clone())).collect();
        inner_auts.sort();

        let canon: Vec<Automorphism> = par::map(auts, |a| {
            inner_auts.iter().map(|i| a.then(i)).min().expect("identity is inner")
        });
        let mut reps: Vec<Automorphism> = canon.clone();
        reps.sort();
        reps.dedup();
        if !reps.first().is_some_and(Automorphism::is_identity) {
            return Err(Error::NotAutomorphism("automorphism list lacks the identity class".into()));
        }
        let rep_index: HashMap<&Automorphism, usize> = reps.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let class_by_table: HashMap<Vec<ElementId>, usize> = auts
            .iter()
            .zip(&canon)
            .map(|(a, c)| (a.table.clone(), rep_index[c]))
            .collect();
        if class_by_table.len() != reps.len() * inner_auts.len() {
            return Err(Error::NotAutomorphism(
                "automorphism list is not a union of full Inn-cosets".into(),
            ));
        }
        let m = reps.len();
        let mut table = Vec::with_capacity(m * m);
        for a in &reps {
            for b in &reps {
                let c = a.then(b);
                let idx = class_by_table
                    .get(&c.table)
                    .copied()
                    .ok_or_else(|| Error::NotAutomorphism("automorphism list is not closed".into()))?;
                table.push(idx);
            }
        }
        Ok(OutGroup {
            group: AbstractGroup::from_flat_unchecked(m, table),
            reps,
            inner: inner_auts,
            class_by_table,
            aut_order: auts.len(),
        })
    }

    pub fn group(&self) -> &AbstractGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.reps.len()
    }

    pub fn aut_order(&self) -> usize {
        self.aut_order
    }

    pub fn inn_order(&self) -> usize {
        self.inner.len()
    }

    pub fn inner_automorphisms(&self) -> &[Automorphism] {
        &self.inner
    }

    /// Canonical representative of class `i`.
    pub fn rep(&self, i: usize) -> &Automorphism {
        &self.reps[i]
    }

    pub fn class(&self, i: usize) -> OuterClass {
        OuterClass { rep: self.reps[i].clone() }
    }

    /// Index of the class containing `a`.
    pub fn index_of(&self, a: &Automorphism) -> Option<usize> {
        self.class_by_table.get(&a.table).copied()
    }

    pub fn class_of(&self, a: &Automorphism) -> Option<OuterClass> {
        self.index_of(a).map(|i| self.class(i))
    }

    pub fn index_of_class(&self, c: &OuterClass) -> Option<usize> {
        self.reps.binary_search(&c.rep).ok()
    }
}

/// C_Out(φ̂) as a subgroup of Out.
pub fn out_centralizer(out: &OutGroup, phi: usize) -> Subgroup {
    out.group.centralizer(phi)
}

/// ⟨φ̂⟩ as a subgroup of Out.
pub fn cyclic_closure(out: &OutGroup, phi: usize) -> Subgroup {
    out.group.cyclic_closure(phi)
}

/// Some class `c` with `c⁻¹·a·c = b` in Out.
pub fn out_conjugacy_test(out: &OutGroup, a: usize, b: usize) -> Option<usize> {
    out.group.conjugacy_test(a, b)
}

/// Quotient of `c` by a central subgroup given as elements of `c`.
pub fn quotient(c: &AbstractGroup, n: &[usize]) -> Result<Quotient> {
    if !c.is_central(n) {
        return Err(Error::NotNormal);
    }
    c.quotient(n)
}
