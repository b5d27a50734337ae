//! Arithmetic in the mapping torus `H_φ = ⟨H, t | t·h·t⁻¹ = φ(h)⟩` and its
//! automorphisms in the normal form `h ↦ δ(h), t ↦ g·t^ε`.
//!
//! Elements are stored as `h·t^k` with an arbitrary-precision exponent.
//! Products push powers of `t` to the right:
//! `(h₁·t^a)(h₂·t^b) = h₁·φ^a(h₂)·t^(a+b)`.
//!
//! Automorphisms compose left to right, as in [`crate::aut`]:
//! `compose_aut(a, b)` applies `a` first. Conjugation by `x` on the torus is
//! `y ↦ x·y·x⁻¹`, so `torus_inner(e, 1)` is the automorphism induced by φ.
//! Conjugation by `t^m`, with `m` the order of φ, is trivial, so the inner
//! automorphisms are exactly `torus_inner(k, i)` for `k ∈ H`, `0 ≤ i < m`.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::abstract_group::AbstractGroup;
use crate::aut::{compute_aut_with_cap, Automorphism, DEFAULT_ENUM_CAP};
use crate::error::{Error, Result};
use crate::par;
use crate::perm::{ElementId, FiniteGroup};

#[derive(Clone, Debug)]
pub struct MappingTorus {
    base: FiniteGroup,
    phi: Automorphism,
    // powers[i] = φ^i for 0 <= i < phi_order
    powers: Vec<Automorphism>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TorusElement {
    pub h: ElementId,
    pub k: BigInt,
}

impl TorusElement {
    pub fn new(h: ElementId, k: impl Into<BigInt>) -> Self {
        TorusElement { h, k: k.into() }
    }

    pub fn base(h: ElementId) -> Self {
        Self::new(h, 0)
    }

    pub fn t() -> Self {
        Self::new(ElementId::IDENTITY, 1)
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}·t^{}", self.h, self.k)
    }
}

/// Orientation of an automorphism: the sign of the `t`-exponent of the
/// image of `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Eps {
    Plus,
    Minus,
}

impl Eps {
    pub fn sign(self) -> i32 {
        match self {
            Eps::Plus => 1,
            Eps::Minus => -1,
        }
    }

    pub fn times(self, other: Eps) -> Eps {
        if self == other {
            Eps::Plus
        } else {
            Eps::Minus
        }
    }
}

/// The automorphism `h ↦ δ(h)`, `t ↦ g·t^ε` of the torus. Ordering is by
/// orientation first, so all orientation-preserving maps sort before the
/// reversing ones.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TorusAut {
    eps: Eps,
    delta: Automorphism,
    g: ElementId,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TorusForm {
    Alpha(Automorphism),
    Zeta(Automorphism),
}

impl TorusAut {
    pub fn delta(&self) -> &Automorphism {
        &self.delta
    }

    /// The `H`-part of the image of `t`.
    pub fn g(&self) -> ElementId {
        self.g
    }

    pub fn eps(&self) -> Eps {
        self.eps
    }
}

impl MappingTorus {
    pub fn new(base: FiniteGroup, phi: Automorphism) -> Result<Self> {
        // Re-validate: the table may come from anywhere.
        let phi = Automorphism::from_table(&base, phi.table().to_vec())?;
        let mut powers = vec![Automorphism::identity(&base)];
        loop {
            let next = powers.last().unwrap().then(&phi);
            if next.is_identity() {
                break;
            }
            powers.push(next);
        }
        Ok(MappingTorus { base, phi, powers })
    }

    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn phi(&self) -> &Automorphism {
        &self.phi
    }

    pub fn phi_order(&self) -> usize {
        self.powers.len()
    }

    /// φ^k for any integer k.
    pub fn phi_pow(&self, k: &BigInt) -> &Automorphism {
        let m = BigInt::from(self.powers.len());
        let r = k.mod_floor(&m).to_usize().expect("residue fits");
        &self.powers[r]
    }

    pub fn identity(&self) -> TorusElement {
        TorusElement::base(ElementId::IDENTITY)
    }

    pub fn mul(&self, x: &TorusElement, y: &TorusElement) -> TorusElement {
        let moved = self.phi_pow(&x.k).apply(y.h);
        TorusElement {
            h: self.base.mul(x.h, moved),
            k: &x.k + &y.k,
        }
    }

    /// `(h·t^k)⁻¹ = φ^(-k)(h⁻¹)·t^(-k)`.
    pub fn inv(&self, x: &TorusElement) -> TorusElement {
        let k = -&x.k;
        TorusElement {
            h: self.phi_pow(&k).apply(self.base.inv(x.h)),
            k,
        }
    }

    pub fn pow(&self, x: &TorusElement, n: &BigInt) -> TorusElement {
        let mut base = if n.is_negative() { self.inv(x) } else { x.clone() };
        let mut e = n.abs();
        let mut acc = self.identity();
        while !e.is_zero() {
            if e.is_odd() {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `x·y·x⁻¹`.
    pub fn conjugate_by(&self, x: &TorusElement, y: &TorusElement) -> TorusElement {
        self.mul(&self.mul(x, y), &self.inv(x))
    }

    /// `H` is the torsion subgroup: finite order iff the exponent is zero.
    pub fn torsion_check(&self, x: &TorusElement) -> bool {
        x.k.is_zero()
    }

    /// Builds `(δ, g, ε)` after checking `a(t)·a(h)·a(t)⁻¹ = a(φ(h))` for
    /// every `h ∈ H`.
    pub fn torus_aut(&self, delta: Automorphism, g: ElementId, eps: Eps) -> Result<TorusAut> {
        if delta.table().len() != self.base.order() || g.idx() >= self.base.order() {
            return Err(Error::NotAutomorphism("data does not match the base group".into()));
        }
        let a = TorusAut { eps, delta, g };
        if self.preserves_relation(&a) {
            Ok(a)
        } else {
            Err(Error::NotAutomorphism(format!(
                "t ↦ {}·t^{} does not preserve t·h·t⁻¹ = φ(h)",
                g,
                eps.sign()
            )))
        }
    }

    pub fn preserves_relation(&self, a: &TorusAut) -> bool {
        let image_t = self.t_image(a);
        self.base.ids().all(|h| {
            let lhs = self.conjugate_by(&image_t, &TorusElement::base(a.delta.apply(h)));
            lhs == TorusElement::base(a.delta.apply(self.phi.apply(h)))
        })
    }

    fn t_image(&self, a: &TorusAut) -> TorusElement {
        TorusElement::new(a.g, a.eps.sign())
    }

    pub fn identity_aut(&self) -> TorusAut {
        TorusAut {
            eps: Eps::Plus,
            delta: Automorphism::identity(&self.base),
            g: ElementId::IDENTITY,
        }
    }

    /// The `g` with `δ(φ(h)) = g·φ(δ(h))·g⁻¹` for all `h`, smallest id first.
    /// Exists iff the class of δ centralizes the class of φ in Out(H); unique
    /// when `H` has trivial center.
    pub fn alpha_twist(&self, delta: &Automorphism) -> Option<ElementId> {
        let h = &self.base;
        let gens = h.generator_ids();
        let lhs: Vec<ElementId> = gens.iter().map(|&x| delta.apply(self.phi.apply(x))).collect();
        let rhs: Vec<ElementId> = gens.iter().map(|&x| self.phi.apply(delta.apply(x))).collect();
        // g·r·g⁻¹ = l  ⇔  g⁻¹ conjugates r to l.
        h.ids().find(|&g| {
            let gi = h.inv(g);
            lhs.iter().zip(&rhs).all(|(&l, &r)| h.conjugate(r, gi) == l)
        })
    }

    /// The `g` with `δ(φ(h)) = g⁻¹·φ⁻¹(δ(h))·g` for all `h`. Exists iff the
    /// class of δ conjugates the class of φ to its inverse.
    pub fn zeta_twist(&self, delta: &Automorphism) -> Option<ElementId> {
        let h = &self.base;
        let phi_inv = self.phi_pow(&BigInt::from(-1));
        let gens = h.generator_ids();
        let lhs: Vec<ElementId> = gens.iter().map(|&x| delta.apply(self.phi.apply(x))).collect();
        let rhs: Vec<ElementId> = gens.iter().map(|&x| phi_inv.apply(delta.apply(x))).collect();
        h.ids().find(|&g| lhs.iter().zip(&rhs).all(|(&l, &r)| h.conjugate(r, g) == l))
    }

    /// `h ↦ δ(h)`, `t ↦ g·t`.
    pub fn build_alpha(&self, delta: &Automorphism) -> Result<TorusAut> {
        let g = self.alpha_twist(delta).ok_or(Error::NotCentralizing)?;
        self.torus_aut(delta.clone(), g, Eps::Plus)
    }

    /// `h ↦ δ(h)`, `t ↦ g⁻¹·t⁻¹` with `g` from [`Self::zeta_twist`].
    pub fn build_zeta(&self, delta: &Automorphism) -> Result<TorusAut> {
        let g = self.zeta_twist(delta).ok_or(Error::NotReversing)?;
        self.torus_aut(delta.clone(), self.base.inv(g), Eps::Minus)
    }

    /// `a(h·t^k) = δ(h)·(g·t^ε)^k`.
    pub fn apply(&self, a: &TorusAut, x: &TorusElement) -> TorusElement {
        let head = TorusElement::base(a.delta.apply(x.h));
        self.mul(&head, &self.pow(&self.t_image(a), &x.k))
    }

    /// `a` first, then `b`.
    pub fn compose_aut(&self, a: &TorusAut, b: &TorusAut) -> TorusAut {
        let t = self.apply(b, &self.t_image(a));
        debug_assert_eq!(t.k.abs(), BigInt::one());
        TorusAut {
            eps: a.eps.times(b.eps),
            delta: a.delta.then(&b.delta),
            g: t.h,
        }
    }

    pub fn invert_aut(&self, a: &TorusAut) -> TorusAut {
        let delta = a.delta.inverse();
        // a⁻¹(t) = (δ⁻¹(g⁻¹)·t)^ε
        let x = TorusElement::new(delta.apply(self.base.inv(a.g)), 1);
        let t = match a.eps {
            Eps::Plus => x,
            Eps::Minus => self.inv(&x),
        };
        TorusAut { eps: a.eps, delta, g: t.h }
    }

    /// Conjugation `y ↦ x·y·x⁻¹` by `x = k·t^i`.
    pub fn torus_inner(&self, k: ElementId, i: impl Into<BigInt>) -> TorusAut {
        let x = TorusElement::new(k, i);
        let table = self
            .base
            .ids()
            .map(|h| {
                let y = self.conjugate_by(&x, &TorusElement::base(h));
                debug_assert!(y.k.is_zero());
                y.h
            })
            .collect();
        let t = self.conjugate_by(&x, &TorusElement::t());
        debug_assert!(t.k.is_one());
        TorusAut {
            eps: Eps::Plus,
            delta: Automorphism::from_table_unchecked(table),
            g: t.h,
        }
    }

    /// The distinct inner automorphisms of the torus, sorted.
    pub fn inner_automorphisms(&self) -> Vec<TorusAut> {
        let mut seen = HashSet::new();
        let mut all: Vec<TorusAut> = (0..self.phi_order())
            .flat_map(|i| self.base.ids().map(move |k| (k, i)))
            .map(|(k, i)| self.torus_inner(k, i))
            .filter(|a| seen.insert(a.clone()))
            .collect();
        all.sort();
        all
    }

    /// True iff `a = compose_aut(b, torus_inner(k, i))` for some `k ∈ H` and
    /// `0 ≤ i < phi_order`.
    pub fn inner_equivalent(&self, a: &TorusAut, b: &TorusAut) -> bool {
        if a.eps != b.eps {
            return false;
        }
        (0..self.phi_order()).any(|i| {
            self.base
                .ids()
                .any(|k| self.compose_aut(b, &self.torus_inner(k, i)) == *a)
        })
    }

    pub fn classify(&self, a: &TorusAut) -> TorusForm {
        match a.eps {
            Eps::Plus => TorusForm::Alpha(a.delta.clone()),
            Eps::Minus => TorusForm::Zeta(a.delta.clone()),
        }
    }

    /// Out(H_φ) and Out⁰(H_φ) by brute force: every `(δ, g, ε)` is checked
    /// against the defining relation directly, then the valid maps are
    /// partitioned into inner classes. `cap` bounds `2·|Aut(H)|·|H|`.
    pub fn enumerate_out_direct(&self, cap: usize) -> Result<DirectOut> {
        let h = &self.base;
        let auts = compute_aut_with_cap(h, cap)?;
        let candidates = 2usize
            .checked_mul(auts.len())
            .and_then(|x| x.checked_mul(h.order()));
        match candidates {
            Some(c) if c <= cap => {}
            _ => return Err(Error::CapExceeded { what: "torus automorphism candidates", cap }),
        }

        let mut valid: Vec<TorusAut> = par::flat_map(&auts, |delta| {
            let mut found = Vec::new();
            for eps in [Eps::Plus, Eps::Minus] {
                for g in h.ids() {
                    let a = TorusAut { eps, delta: delta.clone(), g };
                    if self.preserves_relation(&a) {
                        found.push(a);
                    }
                }
            }
            found
        });
        valid.sort();

        let inner = self.inner_automorphisms();
        let valid_set: HashSet<&TorusAut> = valid.iter().collect();
        let mut class_of: HashMap<TorusAut, usize> = HashMap::with_capacity(valid.len());
        let mut reps: Vec<TorusAut> = Vec::new();
        // Scanning in sorted order makes each class representative its
        // least member.
        for a in &valid {
            if class_of.contains_key(a) {
                continue;
            }
            let c = reps.len();
            for i in &inner {
                let b = self.compose_aut(a, i);
                if !valid_set.contains(&b) {
                    return Err(Error::TheoremViolation(format!(
                        "inner translate of a verified map failed verification (class {c})"
                    )));
                }
                class_of.insert(b, c);
            }
            reps.push(a.clone());
        }
        if class_of.len() != valid.len() {
            return Err(Error::TheoremViolation("inner classes do not cover the automorphisms".into()));
        }

        let n = reps.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &reps {
            for b in &reps {
                table.push(class_of[&self.compose_aut(a, b)]);
            }
        }
        let out = AbstractGroup::from_flat_unchecked(n, table);
        let out0_len = reps.iter().take_while(|r| r.eps == Eps::Plus).count();
        let out0 = out.subgroup(&(0..out0_len).collect::<Vec<_>>())?;
        let index = n / out0_len;
        if index * out0_len != n || !(1..=2).contains(&index) {
            return Err(Error::TheoremViolation(format!("|Out| = {n} is not 1 or 2 times |Out0| = {out0_len}")));
        }
        Ok(DirectOut {
            out,
            out0: out0.group,
            index,
            reps,
            class_of,
            automorphism_count: valid.len(),
            inner_count: inner.len(),
        })
    }

    pub fn enumerate_out_direct_default(&self) -> Result<DirectOut> {
        self.enumerate_out_direct(DEFAULT_ENUM_CAP)
    }
}

/// Result of the brute-force enumeration of Out(H_φ).
#[derive(Clone, Debug)]
pub struct DirectOut {
    pub out: AbstractGroup,
    /// Classes `0..out0.order()` of `out`, the orientation-preserving ones.
    pub out0: AbstractGroup,
    pub index: usize,
    /// Least member of each class.
    pub reps: Vec<TorusAut>,
    pub class_of: HashMap<TorusAut, usize>,
    pub automorphism_count: usize,
    pub inner_count: usize,
}

impl DirectOut {
    pub fn class(&self, a: &TorusAut) -> Option<usize> {
        self.class_of.get(a).copied()
    }
}
