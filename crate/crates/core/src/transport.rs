//! Chosen finite coproducts and products, hom-wise addition, and the checks
//! that the localisation functor transports them.

use std::collections::HashMap;

use crate::category::{FinCategory, Mor, Obj};
use crate::denominators::{DenominatorData, Which};
use crate::error::{Error, Result};
use crate::fraction::FractionCategory;
use crate::three_arrow::{common_denominator, enumerate_three_arrows, CommonMode, ThreeArrow};

/// A chosen binary coproduct `X1 ⊔ X2` with its embeddings, or dually a
/// chosen product with its projections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChosenLimit {
    pub of: [Obj; 2],
    pub object: Obj,
    /// Embeddings `X_k → X1 ⊔ X2`, or projections `X1 × X2 → X_k`.
    pub maps: [Mor; 2],
}

/// Chosen finite coproducts: an initial object and a binary coproduct per
/// ordered pair of objects. Products use the same shape with projections.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CoproductData {
    pub initial: Option<Obj>,
    pub entries: Vec<ChosenLimit>,
}

impl CoproductData {
    pub fn lookup(&self, x1: Obj, x2: Obj) -> Option<&ChosenLimit> {
        self.entries.iter().find(|e| e.of == [x1, x2])
    }
}

/// Hom-wise addition `(f, g) ↦ f + g` on parallel morphisms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AdditionTable {
    entries: Vec<(Mor, Mor, Mor)>,
    sums: HashMap<(Mor, Mor), Mor>,
}

impl AdditionTable {
    pub fn new(entries: Vec<(Mor, Mor, Mor)>) -> Self {
        let sums = entries.iter().map(|&(f, g, h)| ((f, g), h)).collect();
        Self { entries, sums }
    }

    pub fn entries(&self) -> &[(Mor, Mor, Mor)] {
        &self.entries
    }

    pub fn sum(&self, f: Mor, g: Mor) -> Option<Mor> {
        self.sums.get(&(f, g)).copied()
    }

    /// The neutral element of the hom-set containing `f`, if any.
    pub fn zero_like(&self, c: &FinCategory, f: Mor) -> Option<Mor> {
        let hom = c.hom(c.src(f), c.tgt(f));
        hom.iter()
            .copied()
            .find(|&z| hom.iter().all(|&g| self.sum(z, g) == Some(g)))
    }
}

fn validate_chosen(c: &FinCategory, cp: &CoproductData, sym: &str, unit: &str) -> Vec<String> {
    let mut out = Vec::new();
    match cp.initial {
        None => out.push(format!("no {unit} object")),
        Some(i) => {
            for y in c.objects() {
                let n = c.hom(i, y).len();
                if n != 1 {
                    out.push(format!("{unit} {}: {n} morphisms to {}", c.obj_name(i), c.obj_name(y)));
                }
            }
        }
    }
    for x1 in c.objects() {
        for x2 in c.objects() {
            let (n1, n2) = (c.obj_name(x1), c.obj_name(x2));
            let Some(e) = cp.lookup(x1, x2) else {
                out.push(format!("no chosen {n1} {sym} {n2}"));
                continue;
            };
            let [m1, m2] = e.maps;
            if (c.src(m1), c.tgt(m1), c.src(m2), c.tgt(m2)) != (x1, e.object, x2, e.object) {
                out.push(format!("{n1} {sym} {n2}: maps have wrong endpoints"));
                continue;
            }
            'pairs: for z in c.objects() {
                for &h1 in c.hom(x1, z) {
                    for &h2 in c.hom(x2, z) {
                        let n = c
                            .hom(e.object, z)
                            .iter()
                            .filter(|&&u| c.comp(m1, u) == Some(h1) && c.comp(m2, u) == Some(h2))
                            .count();
                        if n != 1 {
                            out.push(format!(
                                "{n1} {sym} {n2} = {}: {n} mediators for ({}, {})",
                                c.obj_name(e.object),
                                c.mor_name(h1),
                                c.mor_name(h2)
                            ));
                            break 'pairs;
                        }
                    }
                }
            }
        }
    }
    out
}

/// Every universal-property failure of the chosen coproducts; empty when valid.
pub fn validate_coproducts(c: &FinCategory, cp: &CoproductData) -> Vec<String> {
    validate_chosen(c, cp, "⊔", "initial")
}

/// Products are coproducts in the opposite category.
pub fn validate_products(c: &FinCategory, pp: &CoproductData) -> Vec<String> {
    validate_chosen(&c.opposite(), pp, "×", "terminal")
}

/// The first mediator `u` out of the chosen coproduct with `emb_k u = h_k`.
pub fn copair(c: &FinCategory, e: &ChosenLimit, h1: Mor, h2: Mor) -> Option<Mor> {
    if c.tgt(h1) != c.tgt(h2) {
        return None;
    }
    c.hom(e.object, c.tgt(h1))
        .iter()
        .copied()
        .find(|&u| c.comp(e.maps[0], u) == Some(h1) && c.comp(e.maps[1], u) == Some(h2))
}

/// `f1 ⊔ f2`, the copairing of `f_k` followed by the target embeddings.
pub fn coproduct_of_maps(c: &FinCategory, cp: &CoproductData, f1: Mor, f2: Mor) -> Option<Mor> {
    let from = cp.lookup(c.src(f1), c.src(f2))?;
    let to = cp.lookup(c.tgt(f1), c.tgt(f2))?;
    copair(c, from, c.comp(f1, to.maps[0])?, c.comp(f2, to.maps[1])?)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosureReport {
    /// `d ⊔ e ∈ D` for all denominators `d`, `e`.
    pub closed: bool,
    /// First pair whose coproduct is undefined or not a denominator.
    pub witness: Option<(Mor, Mor)>,
    /// The same test restricted to `S × S` and `T × T` pairs.
    pub closed_on_st: bool,
}

impl ClosureReport {
    pub fn routes_agree(&self) -> bool {
        self.closed == self.closed_on_st
    }
}

pub fn denominators_closed_under_coproducts(dd: &DenominatorData, cp: &CoproductData) -> ClosureReport {
    let c = &dd.base;
    let fails = |d: Mor, e: Mor| !coproduct_of_maps(c, cp, d, e).is_some_and(|m| dd.is_den(m));
    let mut witness = None;
    'all: for &d in &dd.members(Which::D) {
        for &e in &dd.members(Which::D) {
            if fails(d, e) {
                witness = Some((d, e));
                break 'all;
            }
        }
    }
    let st_fails = [Which::S, Which::T].iter().any(|&w| {
        let ms = dd.members(w);
        ms.iter().any(|&d| ms.iter().any(|&e| fails(d, e)))
    });
    ClosureReport { closed: witness.is_none(), witness, closed_on_st: !st_fails }
}

pub fn denominators_closed_under_products(dd: &DenominatorData, pp: &CoproductData) -> ClosureReport {
    denominators_closed_under_coproducts(&dd.opposite(), pp)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransportReport {
    pub closure: ClosureReport,
    /// Universal-property failures of the transported data in the fraction category.
    pub preservation: Vec<String>,
    pub formula_pairs: usize,
    pub formula_failures: Vec<String>,
    /// `Some(closed)` when the fraction category is saturated and preservation holds.
    pub saturated_converse: Option<bool>,
}

impl TransportReport {
    pub fn passes(&self) -> bool {
        self.closure.closed
            && self.closure.routes_agree()
            && self.preservation.is_empty()
            && self.formula_failures.is_empty()
            && self.saturated_converse != Some(false)
    }
}

fn transported(cp: &CoproductData, fc: &FractionCategory) -> CoproductData {
    CoproductData {
        initial: cp.initial,
        entries: cp
            .entries
            .iter()
            .map(|e| ChosenLimit { of: e.of, object: e.object, maps: e.maps.map(|m| fc.localise(m)) })
            .collect(),
    }
}

/// Checks the mediator formula `[(b1 ⊔ b2) / copair(f1, f2) / a]` on every
/// pair of 3-arrows sharing `a`. `dd` and `fr` are already dualised for
/// products; `class_of` maps a 3-arrow of `dd` to its class.
fn mediator_formula(
    dd: &DenominatorData,
    fr: &FinCategory,
    cp: &CoproductData,
    localise: impl Fn(Mor) -> Mor,
    class_of: impl Fn(&ThreeArrow) -> Result<Mor>,
) -> Result<(usize, Vec<String>)> {
    let c = &dd.base;
    let arrows = enumerate_three_arrows(dd);
    let (mut pairs, mut failures) = (0, Vec::new());
    for t1 in &arrows {
        for t2 in arrows.iter().filter(|t| t.a == t1.a) {
            pairs += 1;
            let label = || format!("({}) and ({})", t1.render(c), t2.render(c));
            let (x1, x2) = (t1.source(c), t2.source(c));
            let (Some(outer), Some(inner)) = (cp.lookup(x1, x2), cp.lookup(c.src(t1.b), c.src(t2.b))) else {
                failures.push(format!("{}: missing chosen coproduct", label()));
                continue;
            };
            let (Some(bb), Some(ff)) = (coproduct_of_maps(c, cp, t1.b, t2.b), copair(c, inner, t1.f, t2.f)) else {
                failures.push(format!("{}: no mediator in the base", label()));
                continue;
            };
            let formula = class_of(&ThreeArrow::new(bb, ff, t1.a))?;
            let (k1, k2) = (class_of(t1)?, class_of(t2)?);
            let (e1, e2) = (localise(outer.maps[0]), localise(outer.maps[1]));
            let mediators: Vec<Mor> = fr
                .hom(outer.object, fr.tgt(k1))
                .iter()
                .copied()
                .filter(|&u| fr.comp(e1, u) == Some(k1) && fr.comp(e2, u) == Some(k2))
                .collect();
            if mediators != [formula] {
                failures.push(format!("{}: formula class {formula:?}, mediators {mediators:?}", label()));
            }
        }
    }
    Ok((pairs, failures))
}

fn transport_report(fc: &FractionCategory, cp: &CoproductData, dual: bool) -> Result<TransportReport> {
    let base_issues = if dual {
        validate_products(fc.base(), cp)
    } else {
        validate_coproducts(fc.base(), cp)
    };
    if let Some(issue) = base_issues.first() {
        return Err(Error::Precondition(format!("chosen data does not validate: {issue}")));
    }
    let (dd, fr) = if dual {
        (fc.dd().opposite(), fc.as_category.opposite())
    } else {
        (fc.dd().clone(), fc.as_category.clone())
    };
    let closure = denominators_closed_under_coproducts(&dd, cp);
    if !closure.closed {
        let (d, e) = closure.witness.expect("witness for a failed closure");
        let c = &dd.base;
        return Err(Error::Precondition(format!(
            "denominators are not closed: {} and {}",
            c.mor_name(d),
            c.mor_name(e)
        )));
    }
    let preservation = validate_chosen(&fr, &transported(cp, fc), "⊔", "initial");
    let class_of = |t: &ThreeArrow| {
        if dual {
            fc.class_of(&ThreeArrow::new(t.a, t.f, t.b))
        } else {
            fc.class_of(t)
        }
    };
    let (formula_pairs, formula_failures) = mediator_formula(&dd, &fr, cp, |m| fc.localise(m), class_of)?;
    let saturated_converse = (fc.is_saturated() && preservation.is_empty()).then_some(closure.closed);
    Ok(TransportReport { closure, preservation, formula_pairs, formula_failures, saturated_converse })
}

/// Verifies that the localisation functor preserves the chosen finite coproducts.
pub fn check_localisation_preserves_coproducts(fc: &FractionCategory, cp: &CoproductData) -> Result<TransportReport> {
    transport_report(fc, cp, false)
}

/// The dual of [`check_localisation_preserves_coproducts`].
pub fn check_localisation_preserves_products(fc: &FractionCategory, pp: &CoproductData) -> Result<TransportReport> {
    transport_report(fc, pp, true)
}

/// Converse for saturated categories: if the localisation preserves the
/// chosen coproducts, the denominators are closed under them.
/// `None` when the hypothesis does not apply.
pub fn saturated_converse(fc: &FractionCategory, cp: &CoproductData) -> Option<bool> {
    if !fc.is_saturated() || !validate_coproducts(&fc.as_category, &transported(cp, fc)).is_empty() {
        return None;
    }
    Some(denominators_closed_under_coproducts(fc.dd(), cp).closed)
}

/// Commutative-monoid and bilinearity failures of a hom-wise addition.
pub fn validate_addition(c: &FinCategory, add: &AdditionTable) -> Vec<String> {
    let mut out = Vec::new();
    let name = |m: Mor| c.mor_name(m).to_string();
    for x in c.objects() {
        for y in c.objects() {
            let hom = c.hom(x, y);
            if hom.is_empty() {
                continue;
            }
            for &f in hom {
                for &g in hom {
                    match add.sum(f, g) {
                        Some(s) if hom.contains(&s) => {}
                        _ => out.push(format!("{} + {} undefined", name(f), name(g))),
                    }
                }
            }
            if !out.is_empty() {
                return out;
            }
            let plus = |f: Mor, g: Mor| add.sum(f, g).expect("total");
            for &f in hom {
                for &g in hom {
                    if plus(f, g) != plus(g, f) {
                        out.push(format!("{} + {} not commutative", name(f), name(g)));
                    }
                    for &h in hom {
                        if plus(plus(f, g), h) != plus(f, plus(g, h)) {
                            out.push(format!("({} + {}) + {} not associative", name(f), name(g), name(h)));
                        }
                    }
                }
            }
            if add.zero_like(c, hom[0]).is_none() {
                out.push(format!("no zero in hom({}, {})", c.obj_name(x), c.obj_name(y)));
            }
        }
    }
    if !out.is_empty() {
        return out;
    }
    let plus = |f: Mor, g: Mor| add.sum(f, g).expect("total");
    for x in c.objects() {
        for y in c.objects() {
            let hom = c.hom(x, y);
            for &f in hom {
                for &g in hom {
                    for h in c.out_of(y) {
                        if c.comp(plus(f, g), h) != add.sum(c.then(f, h), c.then(g, h)) {
                            out.push(format!("({} + {}) {} not bilinear", name(f), name(g), name(h)));
                        }
                    }
                    for h in c.into(x) {
                        if c.comp(h, plus(f, g)) != add.sum(c.then(h, f), c.then(h, g)) {
                            out.push(format!("{} ({} + {}) not bilinear", name(h), name(f), name(g)));
                        }
                    }
                }
            }
        }
    }
    out
}

/// The class-level sum of two parallel 3-arrows over a common normal denominator.
pub fn class_sum(fc: &FractionCategory, add: &AdditionTable, t1: &ThreeArrow, t2: &ThreeArrow) -> Result<Mor> {
    let (n1, n2) = common_denominator(fc.uf(), t1, t2, CommonMode::Parallel)?;
    let c = fc.base();
    let f = add.sum(n1.f, n2.f).ok_or_else(|| {
        Error::Precondition(format!("{} + {} undefined", c.mor_name(n1.f), c.mor_name(n2.f)))
    })?;
    fc.class_of(&ThreeArrow::new(n1.b, f, n1.a))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumReport {
    pub pairs_checked: usize,
    /// Class pairs whose sum depends on the chosen representatives.
    pub ill_defined: Vec<String>,
    /// Pairs sharing `b` and `a` where `[b/f/a] + [b/g/a] ≠ [b/f+g/a]`.
    pub failures: Vec<String>,
}

impl SumReport {
    pub fn passes(&self) -> bool {
        self.ill_defined.is_empty() && self.failures.is_empty()
    }
}

/// Checks the sum formula for parallel 3-arrows sharing `b` and `a`.
pub fn sum_formula_check(fc: &FractionCategory, add: &AdditionTable) -> Result<SumReport> {
    let c = fc.base();
    if let Some(issue) = validate_addition(c, add).into_iter().next() {
        return Err(Error::Precondition(format!("addition: {issue}")));
    }
    let arrows = enumerate_three_arrows(fc.dd());
    let mut seen: HashMap<(Mor, Mor), Mor> = HashMap::new();
    let mut report = SumReport { pairs_checked: 0, ill_defined: Vec::new(), failures: Vec::new() };
    for t1 in &arrows {
        for t2 in arrows.iter().filter(|t| t.is_parallel(t1, c)) {
            let sum = class_sum(fc, add, t1, t2)?;
            let key = (fc.class_of(t1)?, fc.class_of(t2)?);
            if *seen.entry(key).or_insert(sum) != sum {
                report.ill_defined.push(format!("({}) + ({})", t1.render(c), t2.render(c)));
            }
            if t1.b == t2.b && t1.a == t2.a {
                report.pairs_checked += 1;
                let f = add.sum(t1.f, t2.f).expect("validated");
                if fc.class_of(&ThreeArrow::new(t1.b, f, t1.a))? != sum {
                    report.failures.push(format!("({}) + ({})", t1.render(c), t2.render(c)));
                }
            }
        }
    }
    Ok(report)
}
