//! Bounded enumeration of relators of Aut(G) for a finitely presented `G`.
//!
//! Words `Ψ` over automorphism generators `ψ₁…ψₘ` (and their inverses) are
//! listed in shortlex order. For each one the images `Ψ(xⱼ)` are expanded by
//! substitution and compared with `xⱼ` through a semi-decision procedure for
//! the word problem that only ever answers "yes" with a derivation, or gives
//! up when its budget runs out.
//!
//! Words are sequences of nonzero integers: `+j` is the j-th symbol, `-j` its
//! inverse. Automorphism words compose left to right: in `ψ_a ψ_b` the map
//! `ψ_a` is applied first.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::par;
use crate::perm::{ElementId, FiniteGroup};

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FreeWord(Vec<i32>);

/// Cancels adjacent inverse pairs until none remain.
pub fn free_reduce(letters: &[i32]) -> FreeWord {
    let mut out: Vec<i32> = Vec::with_capacity(letters.len());
    for &x in letters {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    FreeWord(out)
}

impl FreeWord {
    pub fn empty() -> Self {
        FreeWord(Vec::new())
    }

    /// Freely reduces `letters`; zero is not a letter.
    pub fn new(letters: &[i32]) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::malformed("0 is not a letter"));
        }
        Ok(free_reduce(letters))
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord(self.0.iter().rev().map(|&x| -x).collect())
    }

    pub fn concat(&self, other: &FreeWord) -> FreeWord {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        free_reduce(&v)
    }

    pub fn rotated(&self, k: usize) -> FreeWord {
        let mut v = self.0.clone();
        v.rotate_left(k);
        free_reduce(&v)
    }

    fn max_symbol(&self) -> usize {
        self.0.iter().map(|x| x.unsigned_abs() as usize).max().unwrap_or(0)
    }
}

impl From<FreeWord> for Vec<i32> {
    fn from(w: FreeWord) -> Self {
        w.0
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PresentationFile {
    pub generators: Vec<String>,
    pub relators: Vec<Vec<i32>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generators: Vec<String>,
    relators: Vec<FreeWord>,
}

impl Presentation {
    pub fn new(generators: Vec<String>, relators: Vec<Vec<i32>>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::malformed("presentation needs at least one generator"));
        }
        let relators = relators
            .iter()
            .map(|r| {
                let w = FreeWord::new(r)?;
                if w.is_empty() {
                    return Err(Error::malformed(format!("relator {r:?} reduces to the empty word")));
                }
                if w.max_symbol() > generators.len() {
                    return Err(Error::malformed(format!("relator {r:?} uses an unknown generator")));
                }
                Ok(w)
            })
            .collect::<Result<_>>()?;
        Ok(Presentation { generators, relators })
    }

    pub fn generators(&self) -> &[String] {
        &self.generators
    }

    pub fn relators(&self) -> &[FreeWord] {
        &self.relators
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    fn check_word(&self, w: &[i32]) -> Result<()> {
        for &x in w {
            if x == 0 || x.unsigned_abs() as usize > self.rank() {
                return Err(Error::malformed(format!("letter {x} is outside ±1..={}", self.rank())));
            }
        }
        Ok(())
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation> {
    let file: PresentationFile = serde_json::from_str(text)?;
    Presentation::new(file.generators, file.relators)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Longest automorphism word `Ψ` to enumerate.
    pub max_aut_len: usize,
    /// Most distinct words the word-problem search may visit per query.
    pub max_states: usize,
    /// Longest intermediate word allowed, both during rewriting and when
    /// expanding `Ψ(xⱼ)`.
    pub max_word_len: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            max_aut_len: 6,
            max_states: 100_000,
            max_word_len: 64,
        }
    }
}

/// One rewriting move: insert a cyclic rotation of a relator (or of its
/// inverse) at `position`, then reduce freely.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Step {
    pub relator: usize,
    pub inverse: bool,
    pub rotation: usize,
    pub position: usize,
}

/// A sequence of moves taking a word to the empty word.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Derivation {
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordProblem {
    Yes(Derivation),
    Unknown,
}

impl WordProblem {
    pub fn is_yes(&self) -> bool {
        matches!(self, WordProblem::Yes(_))
    }
}

fn insertion_word(p: &Presentation, step: &Step) -> FreeWord {
    let r = &p.relators[step.relator];
    let base = if step.inverse { r.inverse() } else { r.clone() };
    base.rotated(step.rotation)
}

fn insert_at(word: &[i32], position: usize, ins: &[i32]) -> FreeWord {
    let mut v = Vec::with_capacity(word.len() + ins.len());
    v.extend_from_slice(&word[..position]);
    v.extend_from_slice(ins);
    v.extend_from_slice(&word[position..]);
    free_reduce(&v)
}

/// Applies a derivation and returns the resulting word. A valid certificate
/// for `w` replays to the empty word.
pub fn replay(p: &Presentation, w: &FreeWord, derivation: &Derivation) -> Result<FreeWord> {
    let mut cur = free_reduce(w.letters());
    for step in &derivation.steps {
        if step.relator >= p.relators.len() || step.position > cur.len() {
            return Err(Error::malformed("derivation step out of range"));
        }
        cur = insert_at(cur.letters(), step.position, insertion_word(p, step).letters());
    }
    Ok(cur)
}

/// Searches for a derivation of `w = 1`.
///
/// States are freely reduced words. From each state every rotation of every
/// relator and inverse relator is inserted at every position. States are
/// expanded shortest first (ties in lexicographic order), so the search
/// follows shrinking rewrites before growing ones. The search gives up after
/// visiting `max_states` words; words longer than `max_word_len` are never
/// visited.
pub fn word_problem_bfs(p: &Presentation, w: &FreeWord, budgets: &Budgets) -> WordProblem {
    let start = free_reduce(w.letters());
    if start.is_empty() {
        return WordProblem::Yes(Derivation::default());
    }
    if start.len() > budgets.max_word_len || budgets.max_states == 0 {
        return WordProblem::Unknown;
    }

    let mut moves: Vec<(Step, FreeWord)> = Vec::new();
    for (relator, r) in p.relators.iter().enumerate() {
        for inverse in [false, true] {
            for rotation in 0..r.len() {
                let step = Step { relator, inverse, rotation, position: 0 };
                let word = insertion_word(p, &step);
                if !word.is_empty() && !moves.iter().any(|(_, m)| *m == word) {
                    moves.push((step, word));
                }
            }
        }
    }

    let mut parent: HashMap<FreeWord, Option<(FreeWord, Step)>> = HashMap::new();
    parent.insert(start.clone(), None);
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((start.len(), start)));

    while let Some(Reverse((_, cur))) = heap.pop() {
        for (template, ins) in &moves {
            for position in 0..=cur.len() {
                let next = insert_at(cur.letters(), position, ins.letters());
                if next.len() > budgets.max_word_len || parent.contains_key(&next) {
                    continue;
                }
                let step = Step { position, ..*template };
                let done = next.is_empty();
                parent.insert(next.clone(), Some((cur.clone(), step)));
                if done {
                    return WordProblem::Yes(rebuild(&parent, next));
                }
                if parent.len() >= budgets.max_states {
                    return WordProblem::Unknown;
                }
                heap.push(Reverse((next.len(), next)));
            }
        }
    }
    WordProblem::Unknown
}

fn rebuild(parent: &HashMap<FreeWord, Option<(FreeWord, Step)>>, end: FreeWord) -> Derivation {
    let mut steps = Vec::new();
    let mut cur = end;
    while let Some(Some((prev, step))) = parent.get(&cur) {
        steps.push(*step);
        cur = prev.clone();
    }
    steps.reverse();
    Derivation { steps }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AutGeneratorFile {
    pub u: Vec<Vec<Vec<i32>>>,
    pub v: Vec<Vec<Vec<i32>>>,
}

/// Automorphisms `ψ₁…ψₘ` of `G` given by generator images: `u[i][j]` is
/// `ψᵢ(xⱼ)` and `v[i][j]` is `ψᵢ⁻¹(xⱼ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutGeneratorSet {
    u: Vec<Vec<FreeWord>>,
    v: Vec<Vec<FreeWord>>,
}

impl AutGeneratorSet {
    pub fn new(p: &Presentation, u: Vec<Vec<Vec<i32>>>, v: Vec<Vec<Vec<i32>>>) -> Result<Self> {
        if u.len() != v.len() {
            return Err(Error::malformed("u and v list different numbers of automorphisms"));
        }
        let words = |table: Vec<Vec<Vec<i32>>>| -> Result<Vec<Vec<FreeWord>>> {
            table
                .into_iter()
                .map(|images| {
                    if images.len() != p.rank() {
                        return Err(Error::malformed(format!(
                            "automorphism lists {} images for {} generators",
                            images.len(),
                            p.rank()
                        )));
                    }
                    images
                        .iter()
                        .map(|w| {
                            p.check_word(w)?;
                            FreeWord::new(w)
                        })
                        .collect()
                })
                .collect()
        };
        Ok(AutGeneratorSet { u: words(u)?, v: words(v)? })
    }

    pub fn count(&self) -> usize {
        self.u.len()
    }

    pub fn forward(&self) -> &[Vec<FreeWord>] {
        &self.u
    }

    pub fn backward(&self) -> &[Vec<FreeWord>] {
        &self.v
    }

    /// Certifies `ψᵢ⁻¹(ψᵢ(xⱼ)) = xⱼ` and `ψᵢ(ψᵢ⁻¹(xⱼ)) = xⱼ` for all `i, j`.
    pub fn verify_inverses(&self, p: &Presentation, budgets: &Budgets) -> Result<()> {
        for i in 0..self.count() {
            let psi = i as i32 + 1;
            for word in [[psi, -psi], [-psi, psi]] {
                for j in 0..p.rank() {
                    let image = apply_aut_word(p, self, &word, j, budgets.max_word_len)?;
                    let diff = image.concat(&FreeWord(vec![-(j as i32 + 1)]));
                    if !word_problem_bfs(p, &diff, budgets).is_yes() {
                        return Err(Error::malformed(format!(
                            "cannot certify that v[{i}] inverts u[{i}] on generator {j}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

pub fn parse_aut_generators(p: &Presentation, text: &str) -> Result<AutGeneratorSet> {
    let file: AutGeneratorFile = serde_json::from_str(text)?;
    AutGeneratorSet::new(p, file.u, file.v)
}

/// Image of generator `j` (0-based) under the composite `Ψ`, freely reduced.
pub fn apply_aut_word(
    p: &Presentation,
    a: &AutGeneratorSet,
    psi: &[i32],
    j: usize,
    max_len: usize,
) -> Result<FreeWord> {
    if j >= p.rank() {
        return Err(Error::malformed(format!("generator index {j} out of range")));
    }
    let mut word = FreeWord(vec![j as i32 + 1]);
    for &letter in psi {
        let i = letter.unsigned_abs() as usize;
        if letter == 0 || i > a.count() {
            return Err(Error::malformed(format!("automorphism letter {letter} out of range")));
        }
        let images = if letter > 0 { &a.u[i - 1] } else { &a.v[i - 1] };
        let mut next = Vec::new();
        for &x in word.letters() {
            let img = &images[x.unsigned_abs() as usize - 1];
            if x > 0 {
                next.extend_from_slice(img.letters());
            } else {
                next.extend(img.letters().iter().rev().map(|&y| -y));
            }
        }
        word = free_reduce(&next);
        if word.len() > max_len {
            return Err(Error::WordTooLong { len: word.len(), cap: max_len });
        }
    }
    Ok(word)
}

/// A finite permutation image of `G`: generator `j` of the group stands for
/// symbol `j + 1` of the presentation. Every relator must evaluate to the
/// identity, so any word that is nontrivial here is nontrivial in `G`.
#[derive(Clone, Debug)]
pub struct PermutationModel {
    group: FiniteGroup,
}

impl PermutationModel {
    pub fn new(p: &Presentation, group: FiniteGroup) -> Result<Self> {
        if group.generator_ids().len() != p.rank() {
            return Err(Error::malformed(format!(
                "model has {} generators, presentation has {}",
                group.generator_ids().len(),
                p.rank()
            )));
        }
        for r in p.relators() {
            if group.eval_word(r.letters())? != ElementId::IDENTITY {
                return Err(Error::malformed(format!("relator {:?} is not trivial in the model", r.letters())));
            }
        }
        Ok(PermutationModel { group })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn eval(&self, w: &FreeWord) -> ElementId {
        self.group.eval_word(w.letters()).expect("words are checked against the presentation")
    }

    /// Whether `Ψ` fixes every generator of the model.
    pub fn acts_trivially(&self, p: &Presentation, a: &AutGeneratorSet, psi: &[i32], max_len: usize) -> Result<bool> {
        for j in 0..p.rank() {
            let image = apply_aut_word(p, a, psi, j, max_len)?;
            if self.eval(&image) != self.group.generator_ids()[j] {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Emission {
    pub word: FreeWord,
    /// One derivation of `Ψ(xⱼ)·xⱼ⁻¹ = 1` per generator.
    pub certificates: Vec<Derivation>,
}

/// Line format of the emitted stream.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmissionRecord {
    pub word: Vec<i32>,
    pub certified: bool,
}

impl From<&Emission> for EmissionRecord {
    fn from(e: &Emission) -> Self {
        EmissionRecord {
            word: e.word.letters().to_vec(),
            certified: true,
        }
    }
}

/// Freely reduced words of length `len` over `±1..=m`, in shortlex order
/// with letters ordered `1 < -1 < 2 < -2 < …`.
pub fn reduced_words(m: usize, len: usize) -> Vec<Vec<i32>> {
    let alphabet: Vec<i32> = (1..=m as i32).flat_map(|i| [i, -i]).collect();
    let mut words = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::with_capacity(words.len() * alphabet.len());
        for w in &words {
            for &x in &alphabet {
                if w.last() != Some(&-x) {
                    let mut v = w.clone();
                    v.push(x);
                    next.push(v);
                }
            }
        }
        words = next;
    }
    words
}

/// Certifies a single candidate `Ψ`, returning one derivation per generator.
pub fn certify(
    p: &Presentation,
    a: &AutGeneratorSet,
    psi: &[i32],
    budgets: &Budgets,
    model: Option<&PermutationModel>,
) -> Option<Vec<Derivation>> {
    let mut certs = Vec::with_capacity(p.rank());
    for j in 0..p.rank() {
        let image = apply_aut_word(p, a, psi, j, budgets.max_word_len).ok()?;
        let diff = image.concat(&FreeWord(vec![-(j as i32 + 1)]));
        // A model is a quotient of G: nontrivial there means nontrivial in G,
        // where the search could never succeed.
        if let Some(model) = model {
            if model.eval(&diff) != ElementId::IDENTITY {
                return None;
            }
        }
        match word_problem_bfs(p, &diff, budgets) {
            WordProblem::Yes(d) => certs.push(d),
            WordProblem::Unknown => return None,
        }
    }
    Some(certs)
}

/// Stream of certified relators of Aut(G), shortest first.
pub struct RelatorStream<'a> {
    presentation: &'a Presentation,
    auts: &'a AutGeneratorSet,
    budgets: Budgets,
    model: Option<&'a PermutationModel>,
    next_len: usize,
    buffer: VecDeque<Emission>,
}

pub fn enumerate_aut_relators<'a>(
    p: &'a Presentation,
    a: &'a AutGeneratorSet,
    budgets: Budgets,
    model: Option<&'a PermutationModel>,
) -> RelatorStream<'a> {
    RelatorStream {
        presentation: p,
        auts: a,
        budgets,
        model,
        next_len: 1,
        buffer: VecDeque::new(),
    }
}

impl Iterator for RelatorStream<'_> {
    type Item = Emission;

    fn next(&mut self) -> Option<Emission> {
        while self.buffer.is_empty() {
            if self.next_len > self.budgets.max_aut_len || self.auts.count() == 0 {
                return None;
            }
            let candidates = reduced_words(self.auts.count(), self.next_len);
            self.next_len += 1;
            let (p, a, budgets, model) = (self.presentation, self.auts, self.budgets, self.model);
            let results = par::map(&candidates, |psi| certify(p, a, psi, &budgets, model));
            for (psi, certs) in candidates.into_iter().zip(results) {
                if let Some(certificates) = certs {
                    self.buffer.push_back(Emission { word: FreeWord(psi), certificates });
                }
            }
        }
        self.buffer.pop_front()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::{Permutation, DEFAULT_ELEMENT_CAP};

    fn s3_presentation() -> Presentation {
        Presentation::new(vec!["x".into(), "y".into()], vec![vec![1, 1, 1], vec![2, 2], vec![1, 2, 1, 2]]).unwrap()
    }

    fn s3_model(p: &Presentation) -> PermutationModel {
        let x = Permutation::from_cycles(3, &[&[0, 1, 2]]).unwrap();
        let y = Permutation::from_cycles(3, &[&[0, 1]]).unwrap();
        PermutationModel::new(p, FiniteGroup::generate("S3", 3, vec![x, y], DEFAULT_ELEMENT_CAP).unwrap()).unwrap()
    }

    /// ψ₁ = conjugation by x, ψ₂ = conjugation by y, as `w ↦ c⁻¹·w·c`.
    fn s3_inner(p: &Presentation) -> AutGeneratorSet {
        AutGeneratorSet::new(
            p,
            vec![vec![vec![1], vec![-1, 2, 1]], vec![vec![-2, 1, 2], vec![2]]],
            vec![vec![vec![1], vec![1, 2, -1]], vec![vec![2, 1, -2], vec![2]]],
        )
        .unwrap()
    }

    #[test]
    fn reduction() {
        assert!(free_reduce(&[1, 2, -2, -1]).is_empty());
        assert_eq!(free_reduce(&[1, 1, 1]).letters(), &[1, 1, 1]);
        assert_eq!(free_reduce(&[1, -2, 2, 1]).letters(), &[1, 1]);
        assert!(FreeWord::new(&[1, 0]).is_err());
    }

    #[test]
    fn presentation_parsing() {
        let p = parse_presentation(r#"{"generators":["x","y"],"relators":[[1,1,1],[2,2],[1,2,1,2]]}"#).unwrap();
        assert_eq!(p, s3_presentation());
        assert!(parse_presentation(r#"{"generators":["x"],"relators":[[1,-1]]}"#).is_err());
        assert!(parse_presentation(r#"{"generators":["x"],"relators":[[2]]}"#).is_err());
        assert!(parse_presentation(r#"{"generators":["x"],"relators":[[0]]}"#).is_err());
        assert!(parse_presentation(r#"{"generators":[],"relators":[]}"#).is_err());
        assert!(parse_presentation("[").is_err());
    }

    #[test]
    fn word_problem_examples() {
        let budgets = Budgets::default();
        let cyclic = Presentation::new(vec!["x".into()], vec![vec![1, 1, 1]]).unwrap();
        assert_eq!(word_problem_bfs(&cyclic, &FreeWord::empty(), &budgets), WordProblem::Yes(Derivation::default()));
        match word_problem_bfs(&cyclic, &FreeWord::new(&[1, 1, 1]).unwrap(), &budgets) {
            WordProblem::Yes(d) => assert_eq!(d.steps.len(), 1),
            WordProblem::Unknown => panic!("x³ is a relator"),
        }

        let p = s3_presentation();
        let model = s3_model(&p);
        let w = FreeWord::new(&[1, 2, 1, 2, 1, 2, 1, 2]).unwrap();
        assert_eq!(model.eval(&w), ElementId::IDENTITY);
        match word_problem_bfs(&p, &w, &budgets) {
            WordProblem::Yes(d) => assert!(replay(&p, &w, &d).unwrap().is_empty()),
            WordProblem::Unknown => panic!("(xy)⁴ is trivial"),
        }
        // x is nontrivial; the search must give up.
        let small = Budgets { max_states: 2_000, max_word_len: 8, ..budgets };
        assert_eq!(word_problem_bfs(&p, &FreeWord::new(&[1]).unwrap(), &small), WordProblem::Unknown);
    }

    #[test]
    fn yes_answers_are_trivial_in_the_model() {
        let p = s3_presentation();
        let model = s3_model(&p);
        let budgets = Budgets { max_states: 5_000, max_word_len: 12, ..Budgets::default() };
        for len in 1..=5 {
            for w in reduced_words(2, len) {
                let w = FreeWord(w);
                if let WordProblem::Yes(d) = word_problem_bfs(&p, &w, &budgets) {
                    assert_eq!(model.eval(&w), ElementId::IDENTITY, "{w:?}");
                    assert!(replay(&p, &w, &d).unwrap().is_empty());
                }
            }
        }
    }

    #[test]
    fn substitution() {
        let p = s3_presentation();
        let a = s3_inner(&p);
        for j in 0..2 {
            assert_eq!(apply_aut_word(&p, &a, &[], j, 64).unwrap().letters(), &[j as i32 + 1]);
        }
        assert_eq!(apply_aut_word(&p, &a, &[1], 1, 64).unwrap().letters(), &[-1, 2, 1]);
        assert_eq!(apply_aut_word(&p, &a, &[1, -1], 1, 64).unwrap().letters(), &[2]);
        assert!(matches!(
            apply_aut_word(&p, &a, &[2, 1, 2, 1], 1, 3),
            Err(Error::WordTooLong { .. })
        ));
        assert!(a.verify_inverses(&p, &Budgets::default()).is_ok());
    }

    #[test]
    fn bad_inverse_table_is_rejected() {
        let p = s3_presentation();
        // v claims ψ⁻¹ fixes y, but ψ moves y.
        let a = AutGeneratorSet::new(&p, vec![vec![vec![1], vec![-1, 2, 1]]], vec![vec![vec![1], vec![2]]]).unwrap();
        let budgets = Budgets { max_states: 2_000, max_word_len: 10, ..Budgets::default() };
        assert!(a.verify_inverses(&p, &budgets).is_err());
    }

    #[test]
    fn shortlex_words() {
        assert_eq!(reduced_words(1, 1), vec![vec![1], vec![-1]]);
        assert_eq!(reduced_words(1, 2), vec![vec![1, 1], vec![-1, -1]]);
        let w = reduced_words(2, 3);
        assert_eq!(w.len(), 4 * 3 * 3);
        assert_eq!(w[0], vec![1, 1, 1]);
    }

    #[test]
    fn identity_generator() {
        let p = s3_presentation();
        let a = AutGeneratorSet::new(&p, vec![vec![vec![1], vec![2]]], vec![vec![vec![1], vec![2]]]).unwrap();
        let budgets = Budgets { max_aut_len: 1, ..Budgets::default() };
        let emitted: Vec<_> = enumerate_aut_relators(&p, &a, budgets, None).collect();
        assert_eq!(emitted[0].word.letters(), &[1]);
        assert!(emitted.iter().all(|e| e.word.len() == 1));
    }

    #[test]
    fn inner_relators_of_s3() {
        let p = s3_presentation();
        let a = s3_inner(&p);
        let model = s3_model(&p);
        let budgets = Budgets { max_aut_len: 4, max_states: 20_000, max_word_len: 24 };
        let emitted: Vec<Vec<i32>> = enumerate_aut_relators(&p, &a, budgets, Some(&model))
            .map(|e| e.word.into())
            .collect();
        for expected in [vec![2, 2], vec![1, 1, 1], vec![1, 2, 1, 2]] {
            assert!(emitted.contains(&expected), "missing {expected:?}");
        }
        for w in &emitted {
            assert!(model.acts_trivially(&p, &a, w, 64).unwrap());
        }
        // Without the model filter the same candidates are certified.
        let unfiltered: Vec<Vec<i32>> = enumerate_aut_relators(&p, &a, Budgets { max_aut_len: 3, max_states: 5_000, ..budgets }, None)
            .map(|e| e.word.into())
            .collect();
        let filtered: Vec<Vec<i32>> = emitted.iter().filter(|w| w.len() <= 3).cloned().collect();
        assert_eq!(unfiltered, filtered);
    }

    #[test]
    fn zero_budget_is_empty() {
        let p = s3_presentation();
        let a = s3_inner(&p);
        let budgets = Budgets { max_aut_len: 0, ..Budgets::default() };
        assert_eq!(enumerate_aut_relators(&p, &a, budgets, None).count(), 0);
    }

    #[test]
    fn model_must_satisfy_relators() {
        let p = s3_presentation();
        let x = Permutation::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        let y = Permutation::from_cycles(4, &[&[0, 1]]).unwrap();
        let g = FiniteGroup::generate("S4", 4, vec![x, y], DEFAULT_ELEMENT_CAP).unwrap();
        assert!(PermutationModel::new(&p, g).is_err());
    }
}
