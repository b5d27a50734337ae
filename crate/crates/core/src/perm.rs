//! Permutations and finite permutation groups with a fully enumerated
//! Cayley table.
//!
//! Points are 0-indexed. Products compose left to right: `a·b` applies `a`
//! first, then `b`, so `(a·b)(i) = b(a(i))`.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_ELEMENT_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn new(images: Vec<u32>) -> Result<Self> {
        let degree = images.len();
        if degree == 0 {
            return Err(Error::malformed("permutation of degree 0"));
        }
        let mut seen = vec![false; degree];
        for &i in &images {
            let i = i as usize;
            if i >= degree || seen[i] {
                return Err(Error::NotBijection { index: 0, degree });
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub fn identity(degree: usize) -> Self {
        Self {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds a permutation from disjoint cycles, e.g. `&[&[0, 1, 2]]`.
    pub fn from_cycles(degree: usize, cycles: &[&[u32]]) -> Result<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for cycle in cycles {
            for (k, &p) in cycle.iter().enumerate() {
                let q = cycle[(k + 1) % cycle.len()];
                if p as usize >= degree || q as usize >= degree {
                    return Err(Error::malformed(format!("point out of range in cycle {cycle:?}")));
                }
                images[p as usize] = q;
            }
        }
        Self::new(images)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn apply(&self, point: u32) -> u32 {
        self.images[point as usize]
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), other.degree());
        Permutation {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            images[j as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.degree()];
        let mut any = false;
        for start in 0..self.degree() {
            if seen[start] || self.images[start] as usize == start {
                continue;
            }
            any = true;
            write!(f, "(")?;
            let mut p = start;
            let mut first = true;
            while !seen[p] {
                seen[p] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{p}")?;
                first = false;
                p = self.images[p] as usize;
            }
            write!(f, ")")?;
        }
        if !any {
            write!(f, "()")?;
        }
        Ok(())
    }
}

/// Index into the canonical element list of a [`FiniteGroup`]. Id 0 is the
/// identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementId(pub u32);

impl ElementId {
    pub const IDENTITY: ElementId = ElementId(0);

    #[inline]
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for ElementId {
    fn from(i: usize) -> Self {
        ElementId(i as u32)
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// On-disk group description.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GroupFile {
    pub name: String,
    pub degree: usize,
    pub generators: Vec<Vec<u32>>,
}

#[derive(Clone, Debug)]
pub struct FiniteGroup {
    name: String,
    degree: usize,
    generators: Vec<Permutation>,
    generator_ids: Vec<ElementId>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, ElementId>,
    mul: Vec<ElementId>,
    inv: Vec<ElementId>,
    // parent[e] = (p, j) with e = p · generator j; identity has none.
    parent: Vec<Option<(ElementId, usize)>>,
    orders: Vec<u32>,
}

pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    parse_group_with_cap(text, DEFAULT_ELEMENT_CAP)
}

pub fn parse_group_with_cap(text: &str, cap: usize) -> Result<FiniteGroup> {
    let file: GroupFile = serde_json::from_str(text)?;
    FiniteGroup::from_file(&file, cap)
}

impl FiniteGroup {
    pub fn from_file(file: &GroupFile, cap: usize) -> Result<Self> {
        if file.degree == 0 {
            return Err(Error::malformed("degree must be positive"));
        }
        if file.generators.is_empty() {
            return Err(Error::malformed("at least one generator is required"));
        }
        let mut generators = Vec::with_capacity(file.generators.len());
        for (index, images) in file.generators.iter().enumerate() {
            if images.len() != file.degree {
                return Err(Error::malformed(format!(
                    "generator {index} has {} images, expected {}",
                    images.len(),
                    file.degree
                )));
            }
            let p = Permutation::new(images.clone()).map_err(|e| match e {
                Error::NotBijection { degree, .. } => Error::NotBijection { index, degree },
                other => other,
            })?;
            generators.push(p);
        }
        Self::generate(&file.name, file.degree, generators, cap)
    }

    /// Breadth-first closure from the identity, multiplying on the right by
    /// generators in order.
    pub fn generate(name: &str, degree: usize, generators: Vec<Permutation>, cap: usize) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::malformed("at least one generator is required"));
        }
        if generators.iter().any(|g| g.degree() != degree) {
            return Err(Error::malformed("generator degree mismatch"));
        }
        let ngens = generators.len();
        let mut elements = vec![Permutation::identity(degree)];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), ElementId(0));
        let mut parent = vec![None];
        let mut right: Vec<ElementId> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (j, g) in generators.iter().enumerate() {
                let y = elements[x].then(g);
                let id = match index.get(&y) {
                    Some(&id) => id,
                    None => {
                        if elements.len() >= cap {
                            return Err(Error::CapExceeded { what: "group order", cap });
                        }
                        let id = ElementId::from(elements.len());
                        index.insert(y.clone(), id);
                        elements.push(y);
                        parent.push(Some((ElementId::from(x), j)));
                        queue.push_back(id.idx());
                        id
                    }
                };
                right.push(id);
            }
        }
        let n = elements.len();

        // Row a: a·b = (a·p)·g_j where b = p·g_j and p precedes b in BFS order.
        let mut mul = vec![ElementId(0); n * n];
        for a in 0..n {
            mul[a * n] = ElementId::from(a);
            for b in 1..n {
                let (p, j) = parent[b].expect("non-identity has a parent");
                let ap = mul[a * n + p.idx()];
                mul[a * n + b] = right[ap.idx() * ngens + j];
            }
        }
        let mut inv = vec![ElementId(0); n];
        for a in 0..n {
            inv[a] = index[&elements[a].inverse()];
        }
        let generator_ids = generators.iter().map(|g| index[g]).collect();
        let mut group = FiniteGroup {
            name: name.to_string(),
            degree,
            generators,
            generator_ids,
            elements,
            index,
            mul,
            inv,
            parent,
            orders: Vec::new(),
        };
        group.orders = (0..n).map(|a| group.compute_order(ElementId::from(a))).collect();
        Ok(group)
    }

    fn compute_order(&self, a: ElementId) -> u32 {
        let mut x = a;
        let mut k = 1;
        while x != ElementId::IDENTITY {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn generator_ids(&self) -> &[ElementId] {
        &self.generator_ids
    }

    pub fn ids(&self) -> impl Iterator<Item = ElementId> + '_ {
        (0..self.order()).map(ElementId::from)
    }

    pub fn element(&self, a: ElementId) -> &Permutation {
        &self.elements[a.idx()]
    }

    pub fn id_of(&self, p: &Permutation) -> Option<ElementId> {
        self.index.get(p).copied()
    }

    #[inline]
    pub fn mul(&self, a: ElementId, b: ElementId) -> ElementId {
        self.mul[a.idx() * self.order() + b.idx()]
    }

    #[inline]
    pub fn inv(&self, a: ElementId) -> ElementId {
        self.inv[a.idx()]
    }

    pub fn element_order(&self, a: ElementId) -> u32 {
        self.orders[a.idx()]
    }

    /// `c⁻¹·x·c`.
    pub fn conjugate(&self, x: ElementId, c: ElementId) -> ElementId {
        self.mul(self.mul(self.inv(c), x), c)
    }

    /// `h⁻¹·k⁻¹·h·k`.
    pub fn commutator(&self, h: ElementId, k: ElementId) -> ElementId {
        let hk = self.mul(self.inv(h), self.inv(k));
        self.mul(self.mul(hk, h), k)
    }

    pub fn commute(&self, a: ElementId, b: ElementId) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn centralizer(&self, x: ElementId) -> Vec<ElementId> {
        self.ids().filter(|&c| self.commute(c, x)).collect()
    }

    pub fn center(&self) -> Vec<ElementId> {
        // Commuting with every generator is enough.
        self.ids()
            .filter(|&z| self.generator_ids.iter().all(|&g| self.commute(z, g)))
            .collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.center().len() == self.order()
    }

    /// Some `c` with `c⁻¹·x·c = y`, smallest id first.
    pub fn conjugacy_test(&self, x: ElementId, y: ElementId) -> Option<ElementId> {
        if self.element_order(x) != self.element_order(y) {
            return None;
        }
        self.ids().find(|&c| self.conjugate(x, c) == y)
    }

    pub fn conjugacy_class_size(&self, x: ElementId) -> usize {
        self.order() / self.centralizer(x).len()
    }

    /// Spanning-tree parent: `a = p · generator j`.
    pub fn parent(&self, a: ElementId) -> Option<(ElementId, usize)> {
        self.parent[a.idx()]
    }

    /// A positive word in generator indices that evaluates to `a`.
    pub fn word_for(&self, a: ElementId) -> Vec<usize> {
        let mut word = Vec::new();
        let mut x = a;
        while let Some((p, j)) = self.parent[x.idx()] {
            word.push(j);
            x = p;
        }
        word.reverse();
        word
    }

    /// Evaluates a signed word: `+j` is generator `j-1`, `-j` its inverse.
    pub fn eval_word(&self, word: &[i32]) -> Result<ElementId> {
        let mut x = ElementId::IDENTITY;
        for &letter in word {
            let j = letter.unsigned_abs() as usize;
            if letter == 0 || j > self.generator_ids.len() {
                return Err(Error::malformed(format!("bad generator letter {letter}")));
            }
            let g = self.generator_ids[j - 1];
            x = self.mul(x, if letter > 0 { g } else { self.inv(g) });
        }
        Ok(x)
    }

    pub fn to_file(&self) -> GroupFile {
        GroupFile {
            name: self.name.clone(),
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.images().to_vec()).collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn perm(degree: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(degree, cycles).unwrap()
    }

    fn group(degree: usize, gens: &[&[&[u32]]]) -> FiniteGroup {
        let gens = gens.iter().map(|c| perm(degree, c)).collect();
        FiniteGroup::generate("G", degree, gens, DEFAULT_ELEMENT_CAP).unwrap()
    }

    /// Closure by repeated multiplication of the whole set, independent of
    /// the BFS in `generate`.
    fn brute_closure(gens: &[Permutation]) -> BTreeSet<Permutation> {
        let mut set: BTreeSet<Permutation> = gens.iter().cloned().collect();
        set.insert(Permutation::identity(gens[0].degree()));
        loop {
            let current: Vec<_> = set.iter().cloned().collect();
            let before = set.len();
            for a in &current {
                for b in &current {
                    set.insert(a.then(b));
                }
            }
            if set.len() == before {
                return set;
            }
        }
    }

    #[test]
    fn closure_orders_match_brute_force() {
        let s3 = vec![perm(3, &[&[0, 1, 2]]), perm(3, &[&[0, 1]])];
        assert_eq!(brute_closure(&s3).len(), 6);
        let g = FiniteGroup::generate("S3", 3, s3, 100).unwrap();
        assert_eq!(g.order(), 6);

        let d5 = vec![perm(5, &[&[0, 1, 2, 3, 4]]), perm(5, &[&[1, 4], &[2, 3]])];
        assert_eq!(brute_closure(&d5).len(), 10);
        let g = FiniteGroup::generate("D5", 5, d5, 100).unwrap();
        assert_eq!(g.order(), 10);

        let g = FiniteGroup::generate("1", 4, vec![Permutation::identity(4)], 100).unwrap();
        assert_eq!(g.order(), 1);
    }

    #[test]
    fn parse_group_file() {
        let g = parse_group(r#"{"name":"S3","degree":3,"generators":[[1,2,0],[1,0,2]]}"#).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.name(), "S3");
        assert!(g.element(ElementId::IDENTITY).is_identity());
        for (gen, id) in g.generators().iter().zip(g.generator_ids()) {
            assert_eq!(g.element(*id), gen);
        }
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_group("{"), Err(Error::Json(_))));
        assert!(matches!(
            parse_group(r#"{"name":"x","degree":3,"generators":[[0,0,1]]}"#),
            Err(Error::NotBijection { index: 0, .. })
        ));
        assert!(matches!(
            parse_group(r#"{"name":"x","degree":3,"generators":[[0,1]]}"#),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            parse_group(r#"{"name":"x","degree":3,"generators":[]}"#),
            Err(Error::Malformed(_))
        ));
        assert!(matches!(
            parse_group_with_cap(r#"{"name":"x","degree":3,"generators":[[1,2,0],[1,0,2]]}"#, 5),
            Err(Error::CapExceeded { cap: 5, .. })
        ));
    }

    #[test]
    fn deterministic_ordering() {
        let text = r#"{"name":"D5","degree":5,"generators":[[1,2,3,4,0],[0,4,3,2,1]]}"#;
        let a = parse_group(text).unwrap();
        let b = parse_group(text).unwrap();
        assert_eq!(a.elements, b.elements);
        assert_eq!(a.mul, b.mul);
        assert_eq!(a.inv, b.inv);
    }

    #[test]
    fn table_matches_pointwise_composition() {
        let g = group(4, &[&[&[0, 1, 2, 3]], &[&[0, 1]]]);
        assert_eq!(g.order(), 24);
        for a in g.ids() {
            for b in g.ids() {
                let expected = g.element(a).then(g.element(b));
                assert_eq!(g.element(g.mul(a, b)), &expected);
            }
            assert!(g.element(g.mul(a, g.inv(a))).is_identity());
        }
    }

    #[test]
    fn s3_product_of_cycle_and_transposition() {
        let g = group(3, &[&[&[0, 1, 2]], &[&[0, 1]]]);
        let c = g.id_of(&perm(3, &[&[0, 1, 2]])).unwrap();
        let t = g.id_of(&perm(3, &[&[0, 1]])).unwrap();
        // 0 -> 1 -> 0, 1 -> 2 -> 2, 2 -> 0 -> 1: the transposition (1 2).
        assert_eq!(g.element(g.mul(c, t)), &perm(3, &[&[1, 2]]));
        assert_eq!(g.mul(ElementId::IDENTITY, c), c);
    }

    #[test]
    fn centers() {
        let s3 = group(3, &[&[&[0, 1, 2]], &[&[0, 1]]]);
        assert_eq!(s3.center(), vec![ElementId::IDENTITY]);
        let d4 = group(4, &[&[&[0, 1, 2, 3]], &[&[1, 3]]]);
        assert_eq!(d4.order(), 8);
        let z = d4.center();
        assert_eq!(z.len(), 2);
        assert_eq!(d4.element(z[1]), &perm(4, &[&[0, 2], &[1, 3]]));
        let c6 = group(6, &[&[&[0, 1, 2, 3, 4, 5]]]);
        assert_eq!(c6.center().len(), 6);
        assert!(c6.is_abelian());
    }

    #[test]
    fn centralizers_and_commutators() {
        let s3 = group(3, &[&[&[0, 1, 2]], &[&[0, 1]]]);
        assert_eq!(s3.centralizer(ElementId::IDENTITY).len(), 6);
        let c = s3.id_of(&perm(3, &[&[0, 1, 2]])).unwrap();
        let cent: BTreeSet<_> = s3.centralizer(c).into_iter().map(|x| s3.element(x).clone()).collect();
        let expected: BTreeSet<_> = [
            Permutation::identity(3),
            perm(3, &[&[0, 1, 2]]),
            perm(3, &[&[0, 2, 1]]),
        ]
        .into_iter()
        .collect();
        assert_eq!(cent, expected);

        let t01 = s3.id_of(&perm(3, &[&[0, 1]])).unwrap();
        let t02 = s3.id_of(&perm(3, &[&[0, 2]])).unwrap();
        let k = s3.commutator(t01, t02);
        assert_eq!(s3.element_order(k), 3);
        assert_eq!(s3.commutator(c, c), ElementId::IDENTITY);
    }

    #[test]
    fn conjugacy() {
        let s3 = group(3, &[&[&[0, 1, 2]], &[&[0, 1]]]);
        let c1 = s3.id_of(&perm(3, &[&[0, 1, 2]])).unwrap();
        let c2 = s3.id_of(&perm(3, &[&[0, 2, 1]])).unwrap();
        let t = s3.id_of(&perm(3, &[&[0, 1]])).unwrap();
        assert_eq!(s3.conjugacy_test(c1, c1), Some(ElementId::IDENTITY));
        let w = s3.conjugacy_test(c1, c2).unwrap();
        assert_eq!(s3.conjugate(c1, w), c2);
        assert_eq!(s3.conjugacy_test(c1, t), None);
    }

    #[test]
    fn words_round_trip() {
        let g = group(5, &[&[&[0, 1, 2, 3, 4]], &[&[0, 1, 2]]]);
        assert_eq!(g.order(), 60);
        for a in g.ids() {
            let word: Vec<i32> = g.word_for(a).iter().map(|&j| j as i32 + 1).collect();
            assert_eq!(g.eval_word(&word).unwrap(), a);
        }
        assert!(g.eval_word(&[0]).is_err());
        assert!(g.eval_word(&[3]).is_err());
    }

    #[test]
    fn display_cycles() {
        assert_eq!(perm(4, &[&[0, 1, 2]]).to_string(), "(0 1 2)");
        assert_eq!(Permutation::identity(3).to_string(), "()");
    }
}
