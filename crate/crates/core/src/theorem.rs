//! End-to-end computation of Out⁰(H_φ) two ways.
//!
//! The formula side works entirely inside Out(H): it takes the centralizer of
//! the class φ̂ and divides by the cyclic subgroup ⟨φ̂⟩. The index of Out⁰ in
//! Out(H_φ) is 2 exactly when φ̂ is conjugate to φ̂⁻¹. The direct side
//! enumerates torus automorphisms by brute force
//! ([`MappingTorus::enumerate_out_direct`]). The map η sends the class of δ
//! to the class of α_δ and is checked elementwise to be a well-defined
//! surjective homomorphism with kernel ⟨φ̂⟩.
//!
//! Everything here requires `Z(H) = 1`; with a nontrivial center the twist
//! element is not unique and the pipeline refuses.

use serde::Serialize;

use crate::abstract_group::{iso_test_with_cap, AbstractGroup, GroupSummary, Subgroup, DEFAULT_ISO_CAP};
use crate::aut::{
    compute_aut_with_cap, cyclic_closure, inner, out_centralizer, out_conjugacy_test, project_out,
    quotient, Automorphism, AutomorphismFile, OutGroup, DEFAULT_ENUM_CAP,
};
use crate::error::{Error, Result};
use crate::perm::FiniteGroup;
use crate::torus::{DirectOut, MappingTorus};

pub const REPORT_SCHEMA: u32 = 1;

const NO_EPI_JUSTIFICATION: &str =
    "H is finite, so every homomorphism to Z has finite image and is therefore trivial";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    /// Bounds automorphism searches and the direct torus enumeration.
    pub enumeration: usize,
    /// Bounds the isomorphism search.
    pub iso: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            enumeration: DEFAULT_ENUM_CAP,
            iso: DEFAULT_ISO_CAP,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub trivial_center: bool,
    pub center_order: usize,
    pub no_epi_onto_z: bool,
    pub no_epi_justification: String,
    pub phi_valid: bool,
}

impl HypothesisReport {
    pub fn all_pass(&self) -> bool {
        self.trivial_center && self.no_epi_onto_z && self.phi_valid
    }
}

pub fn check_hypotheses(h: &FiniteGroup, phi: &Automorphism) -> HypothesisReport {
    let center_order = h.center().len();
    HypothesisReport {
        trivial_center: center_order == 1,
        center_order,
        no_epi_onto_z: true,
        no_epi_justification: NO_EPI_JUSTIFICATION.to_string(),
        phi_valid: Automorphism::from_table(h, phi.table().to_vec()).is_ok(),
    }
}

/// Aut(H), Out(H) and the class of φ, computed once and shared by the
/// formula side, the index decision and the η checks.
#[derive(Clone, Debug)]
pub struct BaseData {
    pub torus: MappingTorus,
    pub auts: Vec<Automorphism>,
    pub out: OutGroup,
    pub phi_class: usize,
    pub hypotheses: HypothesisReport,
}

impl BaseData {
    pub fn new(h: &FiniteGroup, phi: &Automorphism, caps: Caps) -> Result<Self> {
        let hypotheses = check_hypotheses(h, phi);
        if !hypotheses.all_pass() {
            return Err(Error::HypothesisViolation(describe_failures(&hypotheses)));
        }
        let auts = compute_aut_with_cap(h, caps.enumeration)?;
        let out = project_out(h, &auts)?;
        let phi_class = out
            .index_of(phi)
            .ok_or_else(|| Error::TheoremViolation("phi is missing from the computed Aut(H)".into()))?;
        let torus = MappingTorus::new(h.clone(), phi.clone())?;
        Ok(BaseData { torus, auts, out, phi_class, hypotheses })
    }

    pub fn base(&self) -> &FiniteGroup {
        self.torus.base()
    }
}

fn describe_failures(h: &HypothesisReport) -> String {
    let mut parts = Vec::new();
    if !h.trivial_center {
        parts.push(format!("center has order {}", h.center_order));
    }
    if !h.phi_valid {
        parts.push("phi is not an automorphism".to_string());
    }
    if !h.no_epi_onto_z {
        parts.push("base maps onto Z".to_string());
    }
    parts.join("; ")
}

/// C_Out(φ̂)/⟨φ̂⟩ with its pieces.
#[derive(Clone, Debug)]
pub struct FormulaSide {
    pub centralizer: Subgroup,
    pub cyclic: Subgroup,
    pub group: AbstractGroup,
    /// Quotient coset of each centralizer element.
    pub coset_of: Vec<usize>,
}

pub fn formula_side(data: &BaseData) -> Result<FormulaSide> {
    let centralizer = out_centralizer(&data.out, data.phi_class);
    let cyclic = cyclic_closure(&data.out, data.phi_class);
    // ⟨φ̂⟩ inside the centralizer's own numbering.
    let local: Vec<usize> = cyclic
        .embedding
        .iter()
        .map(|x| {
            centralizer
                .embedding
                .binary_search(x)
                .map_err(|_| Error::TheoremViolation("⟨φ̂⟩ is not inside its centralizer".into()))
        })
        .collect::<Result<_>>()?;
    let q = quotient(&centralizer.group, &local)?;
    Ok(FormulaSide {
        centralizer,
        cyclic,
        group: q.group,
        coset_of: q.coset_of,
    })
}

pub fn out0_via_formula(h: &FiniteGroup, phi: &Automorphism) -> Result<AbstractGroup> {
    let data = BaseData::new(h, phi, Caps::default())?;
    Ok(formula_side(&data)?.group)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IndexDecision {
    pub index: usize,
    /// A class `c` with `c⁻¹·φ̂·c = φ̂⁻¹`, when one exists.
    pub witness: Option<usize>,
}

pub fn index_decision(data: &BaseData) -> IndexDecision {
    let g = data.out.group();
    let witness = out_conjugacy_test(&data.out, data.phi_class, g.inv(data.phi_class));
    IndexDecision {
        index: if witness.is_some() { 2 } else { 1 },
        witness,
    }
}

pub fn out0_index(h: &FiniteGroup, phi: &Automorphism) -> Result<usize> {
    let data = BaseData::new(h, phi, Caps::default())?;
    Ok(index_decision(&data).index)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct EtaChecks {
    pub well_defined: bool,
    pub homomorphism: bool,
    pub surjective: bool,
    pub kernel_equals_cyclic_phi: bool,
    /// η as a table: centralizer element -> Out⁰ class of the direct side.
    pub image: Vec<usize>,
    pub counterexample: Option<String>,
}

impl EtaChecks {
    pub fn all_pass(&self) -> bool {
        self.well_defined && self.homomorphism && self.surjective && self.kernel_equals_cyclic_phi
    }
}

/// Evaluates η on every element of the centralizer and checks it.
pub fn eta_checks(data: &BaseData, formula: &FormulaSide, direct: &DirectOut) -> Result<EtaChecks> {
    let m = &data.torus;
    let h = data.base();
    let c = &formula.centralizer;
    let out0_order = direct.out0.order();
    let mut checks = EtaChecks::default();
    let mut problems: Vec<String> = Vec::new();

    let class_of_alpha = |delta: &Automorphism| -> Option<usize> {
        let a = m.build_alpha(delta).ok()?;
        direct.class(&a).filter(|&x| x < out0_order)
    };

    let mut image = Vec::with_capacity(c.group.order());
    for (local, &global) in c.embedding.iter().enumerate() {
        match class_of_alpha(data.out.rep(global)) {
            Some(x) => image.push(x),
            None => {
                return Ok(EtaChecks {
                    counterexample: Some(format!(
                        "α is undefined or not orientation-preserving for centralizer element {local}"
                    )),
                    ..checks
                })
            }
        }
    }

    checks.well_defined = true;
    'outer: for (local, &global) in c.embedding.iter().enumerate() {
        let delta = data.out.rep(global);
        for k in h.ids() {
            let perturbed = delta.then(&inner(h, k));
            if class_of_alpha(&perturbed) != Some(image[local]) {
                checks.well_defined = false;
                problems.push(format!("perturbing centralizer element {local} by inner({k}) changes its image"));
                break 'outer;
            }
        }
    }

    checks.homomorphism = true;
    'pairs: for x in 0..c.group.order() {
        for y in 0..c.group.order() {
            if image[c.group.mul(x, y)] != direct.out.mul(image[x], image[y]) {
                checks.homomorphism = false;
                problems.push(format!("η({x}·{y}) differs from η({x})·η({y})"));
                break 'pairs;
            }
        }
    }

    let mut hit = vec![false; out0_order];
    for &x in &image {
        hit[x] = true;
    }
    checks.surjective = hit.iter().all(|&b| b);
    if !checks.surjective {
        problems.push("η misses some Out⁰ classes".into());
    }

    let kernel: Vec<usize> = image
        .iter()
        .enumerate()
        .filter(|&(_, &x)| x == 0)
        .map(|(local, _)| c.embedding[local])
        .collect();
    checks.kernel_equals_cyclic_phi = kernel == formula.cyclic.embedding;
    if !checks.kernel_equals_cyclic_phi {
        problems.push(format!("kernel {kernel:?} differs from ⟨φ̂⟩ {:?}", formula.cyclic.embedding));
    }

    checks.image = image;
    checks.counterexample = (!problems.is_empty()).then(|| problems.join("; "));
    Ok(checks)
}

pub fn eta_check(h: &FiniteGroup, phi: &Automorphism, caps: Caps) -> Result<EtaChecks> {
    let data = BaseData::new(h, phi, caps)?;
    let formula = formula_side(&data)?;
    let direct = data.torus.enumerate_out_direct(caps.enumeration)?;
    eta_checks(&data, &formula, &direct)
}

#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub hypotheses: HypothesisReport,
    pub formula: FormulaSide,
    pub direct: DirectOut,
    pub index: IndexDecision,
    pub phi_conjugate_to_inverse: bool,
    /// Whether some δ ∈ Aut(H) admits a ζ twist.
    pub zeta_exists: bool,
    pub eta: EtaChecks,
    /// Isomorphism from the formula group to the direct Out⁰.
    pub iso_witness: Option<Vec<usize>>,
    pub violations: Vec<String>,
}

impl TheoremReport {
    pub fn formula_group(&self) -> &AbstractGroup {
        &self.formula.group
    }

    pub fn direct_out0(&self) -> &AbstractGroup {
        &self.direct.out0
    }

    pub fn direct_out(&self) -> &AbstractGroup {
        &self.direct.out
    }

    pub fn is_consistent(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn cross_validate(h: &FiniteGroup, phi: &Automorphism, caps: Caps) -> Result<TheoremReport> {
    let data = BaseData::new(h, phi, caps)?;
    cross_validate_data(&data, caps)
}

pub fn cross_validate_data(data: &BaseData, caps: Caps) -> Result<TheoremReport> {
    let formula = formula_side(data)?;
    let index = index_decision(data);
    let direct = data.torus.enumerate_out_direct(caps.enumeration)?;
    let eta = eta_checks(data, &formula, &direct)?;
    let iso_witness = iso_test_with_cap(&formula.group, &direct.out0, caps.iso)?;
    let zeta_exists = data.auts.iter().any(|d| data.torus.zeta_twist(d).is_some());

    let mut violations = Vec::new();
    if iso_witness.is_none() {
        violations.push(format!(
            "no isomorphism between C_Out(φ̂)/⟨φ̂⟩ (order {}) and direct Out⁰ (order {})",
            formula.group.order(),
            direct.out0.order()
        ));
    }
    if index.index != direct.index {
        violations.push(format!("index {} from conjugacy, {} from enumeration", index.index, direct.index));
    }
    if zeta_exists != index.witness.is_some() {
        violations.push("existence of a ζ map disagrees with the conjugacy test".into());
    }
    if direct.out.order() != direct.index * direct.out0.order() {
        violations.push("|Out| is not index·|Out⁰|".into());
    }
    if !eta.all_pass() {
        violations.push(format!(
            "η check failed: {}",
            eta.counterexample.as_deref().unwrap_or("unspecified")
        ));
    }
    Ok(TheoremReport {
        hypotheses: data.hypotheses.clone(),
        phi_conjugate_to_inverse: index.witness.is_some(),
        formula,
        direct,
        index,
        zeta_exists,
        eta,
        iso_witness,
        violations,
    })
}

// ---------------------------------------------------------------------------
// JSON report

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub seed: Option<String>,
    pub group: GroupInfo,
    pub phi: PhiInfo,
    pub hypotheses: HypothesisReport,
    pub base: Option<BaseInfo>,
    pub formula: Option<FormulaInfo>,
    pub index: Option<usize>,
    pub phi_conjugate_to_inverse: Option<bool>,
    pub conjugating_class: Option<usize>,
    pub direct: Option<DirectInfo>,
    pub eta: Option<EtaChecks>,
    pub iso_witness: Option<Vec<usize>>,
    pub violations: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GroupInfo {
    pub name: String,
    pub degree: usize,
    pub order: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct PhiInfo {
    pub images: Vec<Vec<i32>>,
    pub order: usize,
    pub outer_class: Option<usize>,
    pub outer_order: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BaseInfo {
    pub aut_order: usize,
    pub inn_order: usize,
    pub out: GroupSummary,
}

#[derive(Clone, Debug, Serialize)]
pub struct FormulaInfo {
    pub centralizer_order: usize,
    pub cyclic_order: usize,
    pub group: GroupSummary,
    pub table: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectInfo {
    pub automorphisms: usize,
    pub inner_automorphisms: usize,
    pub out: GroupSummary,
    pub out0: GroupSummary,
    pub index: usize,
    pub zeta_exists: bool,
    pub out0_table: Vec<Vec<usize>>,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct AnalyzeOptions {
    pub cross_validate: bool,
    pub caps: Caps,
}

/// Runs the pipeline and collects a report. Hypothesis failures are
/// reported in the `hypotheses` block with the remaining sections empty;
/// inconsistencies between the two sides land in `violations`.
pub fn analyze(h: &FiniteGroup, phi: &Automorphism, options: AnalyzeOptions, seed: Option<String>) -> Result<Report> {
    let hypotheses = check_hypotheses(h, phi);
    let mut report = Report {
        schema: REPORT_SCHEMA,
        seed,
        group: GroupInfo {
            name: h.name().to_string(),
            degree: h.degree(),
            order: h.order(),
        },
        phi: PhiInfo {
            images: phi.to_file(h).images,
            order: phi.order(),
            outer_class: None,
            outer_order: None,
        },
        hypotheses: hypotheses.clone(),
        base: None,
        formula: None,
        index: None,
        phi_conjugate_to_inverse: None,
        conjugating_class: None,
        direct: None,
        eta: None,
        iso_witness: None,
        violations: Vec::new(),
    };
    if !hypotheses.all_pass() {
        return Ok(report);
    }
    let caps = options.caps;
    let data = BaseData::new(h, phi, caps)?;
    let out_group = data.out.group();
    report.phi.outer_class = Some(data.phi_class);
    report.phi.outer_order = Some(out_group.element_order(data.phi_class));
    report.base = Some(BaseInfo {
        aut_order: data.out.aut_order(),
        inn_order: data.out.inn_order(),
        out: out_group.summary(),
    });

    let (formula, index) = if options.cross_validate {
        let t = cross_validate_data(&data, caps)?;
        report.direct = Some(DirectInfo {
            automorphisms: t.direct.automorphism_count,
            inner_automorphisms: t.direct.inner_count,
            out: t.direct.out.summary(),
            out0: t.direct.out0.summary(),
            index: t.direct.index,
            zeta_exists: t.zeta_exists,
            out0_table: t.direct.out0.rows(),
        });
        report.eta = Some(t.eta);
        report.iso_witness = t.iso_witness;
        report.violations = t.violations;
        (t.formula, t.index)
    } else {
        (formula_side(&data)?, index_decision(&data))
    };
    report.formula = Some(FormulaInfo {
        centralizer_order: formula.centralizer.group.order(),
        cyclic_order: formula.cyclic.group.order(),
        group: formula.group.summary(),
        table: formula.group.rows(),
    });
    report.index = Some(index.index);
    report.phi_conjugate_to_inverse = Some(index.witness.is_some());
    report.conjugating_class = index.witness;
    Ok(report)
}

/// Loads φ from its file form.
pub fn load_phi(h: &FiniteGroup, file: &AutomorphismFile) -> Result<Automorphism> {
    Automorphism::from_file(h, file)
}
