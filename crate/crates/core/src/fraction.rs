//! The fraction category: class table, composition, localisation functor,
//! inverses, universal property, saturation and subcategory equivalences.

use std::collections::BTreeSet;
use std::fmt;

use crate::category::{validate_functor, CategoryBuilder, FinCategory, FunctorTable, Mor, Obj};
use crate::denominators::{
    check_axioms, classify_saturation, is_weak_pullback, is_weak_pushout, preserves_denominators,
    pullback_completions, pushout_completions, factorisations, DenominatorData, SaturationLevel,
    UniFractionable, Which,
};
use crate::error::{Error, Result};
use crate::three_arrow::{check_three_arrow, fraction_equivalence, FractionPartition, ThreeArrow};

/// Composite by the strict construction: factor `b2 a1 = j q`, complete `q`
/// against `f1` on the T-side and `j` against `f2` on the S-side.
pub fn compose_strict(uf: &UniFractionable, t1: &ThreeArrow, t2: &ThreeArrow) -> Result<ThreeArrow> {
    let c = uf.base();
    check_composable(uf.dd(), t1, t2)?;
    let (j, q) = uf.factorise(c.then(t2.b, t1.a))?;
    let (f1, q1) = uf.pullback(q, t1.f)?;
    let (f2, j1) = uf.pushout(j, t2.f)?;
    Ok(ThreeArrow::new(c.then(q1, t1.b), c.then(f1, f2), c.then(t2.a, j1)))
}

fn check_composable(dd: &DenominatorData, t1: &ThreeArrow, t2: &ThreeArrow) -> Result<()> {
    check_three_arrow(dd, t1)?;
    check_three_arrow(dd, t2)?;
    let c = &dd.base;
    if t1.target(c) != t2.source(c) {
        return Err(Error::Precondition(format!(
            "{} ends at {} but {} starts at {}",
            t1.display(c),
            c.obj_name(t1.target(c)),
            t2.display(c),
            c.obj_name(t2.source(c))
        )));
    }
    Ok(())
}

/// Strict-mode composites over every choice of factorisation and weakly
/// universal completion.
pub fn all_strict_composites(dd: &DenominatorData, t1: &ThreeArrow, t2: &ThreeArrow) -> Result<Vec<ThreeArrow>> {
    check_composable(dd, t1, t2)?;
    let c = &dd.base;
    let mut out = Vec::new();
    for (j, q) in factorisations(dd, c.then(t2.b, t1.a)) {
        let pulls: Vec<_> = pullback_completions(dd, q, t1.f)
            .into_iter()
            .filter(|&(f, p)| is_weak_pullback(c, q, t1.f, f, p).unwrap_or(false))
            .collect();
        let pushes: Vec<_> = pushout_completions(dd, j, t2.f)
            .into_iter()
            .filter(|&(f, i)| is_weak_pushout(c, j, t2.f, f, i).unwrap_or(false))
            .collect();
        for &(f1, q1) in &pulls {
            for &(f2, j1) in &pushes {
                out.push(ThreeArrow::new(c.then(q1, t1.b), c.then(f1, f2), c.then(t2.a, j1)));
            }
        }
    }
    Ok(out)
}

/// Lax-mode composites: every `b2 a1 = d e`, `g1 e = e' f1`, `d g2 = f2 d'`
/// with `d, e, e', d' ∈ D`, giving `(e' b1, g1 g2, a2 d')`. Index order.
pub fn all_lax_composites(dd: &DenominatorData, t1: &ThreeArrow, t2: &ThreeArrow) -> Result<Vec<ThreeArrow>> {
    check_composable(dd, t1, t2)?;
    let c = &dd.base;
    let mid = c.then(t2.b, t1.a);
    let mut out = Vec::new();
    for d in c.out_of(c.src(mid)).filter(|&d| dd.is_den(d)) {
        for &e in c.hom(c.tgt(d), c.tgt(mid)) {
            if !dd.is_den(e) || c.then(d, e) != mid {
                continue;
            }
            let mut lefts = Vec::new();
            for g1 in c.into(c.src(e)) {
                for &e1 in c.hom(c.src(g1), c.src(t1.f)) {
                    if dd.is_den(e1) && c.then(g1, e) == c.then(e1, t1.f) {
                        lefts.push((g1, e1));
                    }
                }
            }
            for g2 in c.out_of(c.tgt(d)) {
                for &d1 in c.hom(c.tgt(t2.f), c.tgt(g2)) {
                    if dd.is_den(d1) && c.then(d, g2) == c.then(t2.f, d1) {
                        for &(g1, e1) in &lefts {
                            out.push(ThreeArrow::new(c.then(e1, t1.b), c.then(g1, g2), c.then(t2.a, d1)));
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The first lax completion in index order.
pub fn compose_lax(dd: &DenominatorData, t1: &ThreeArrow, t2: &ThreeArrow) -> Result<ThreeArrow> {
    all_lax_composites(dd, t1, t2)?.into_iter().next().ok_or_else(|| {
        Error::Internal(format!(
            "no lax completion for {} and {}",
            t1.display(&dd.base),
            t2.display(&dd.base)
        ))
    })
}

/// The fraction category of a uni-fractionable category.
///
/// Morphism `k` of [`FractionCategory::as_category`] is fraction class `k`;
/// its id is `q` followed by the enumeration index of the smallest member.
#[derive(Debug, Clone)]
pub struct FractionCategory {
    uf: UniFractionable,
    partition: FractionPartition,
    pub as_category: FinCategory,
    pub localisation: FunctorTable,
}

pub fn build_fraction_category(dd: DenominatorData) -> Result<FractionCategory> {
    FractionCategory::build(UniFractionable::new(dd)?)
}

impl FractionCategory {
    pub fn build(uf: UniFractionable) -> Result<Self> {
        let partition = fraction_equivalence(uf.dd())?;
        let c = uf.base();
        let n = partition.num_classes();
        let name = |k: usize| format!("q{}", partition.representative_position(k));
        let mut b = CategoryBuilder::new();
        for o in c.objects() {
            b.object(c.obj_name(o))?;
        }
        for k in 0..n {
            let t = partition.representative(k);
            b.morphism(name(k), c.obj_name(t.source(c)), c.obj_name(t.target(c)))?;
        }
        let class_of = |t: &ThreeArrow| partition.try_class_of(c, t);
        for o in c.objects() {
            let id = c.identity(o);
            b.identity(c.obj_name(o), &name(class_of(&ThreeArrow::new(id, id, id))?))?;
        }
        for k1 in 0..n {
            let t1 = partition.representative(k1);
            for k2 in 0..n {
                let t2 = partition.representative(k2);
                if t1.target(c) != t2.source(c) {
                    continue;
                }
                let k = class_of(&compose_strict(&uf, &t1, &t2)?)?;
                b.composite(&name(k1), &name(k2), &name(k))?;
            }
        }
        let as_category = b.build()?;
        let localisation = FunctorTable {
            obj_map: c.objects().collect(),
            mor_map: c
                .morphisms()
                .map(|f| class_of(&ThreeArrow::of_morphism(c, f)).map(|k| Mor(k as u32)))
                .collect::<Result<_>>()?,
        };
        Ok(Self {
            uf,
            partition,
            as_category,
            localisation,
        })
    }

    pub fn uf(&self) -> &UniFractionable {
        &self.uf
    }

    pub fn dd(&self) -> &DenominatorData {
        self.uf.dd()
    }

    pub fn base(&self) -> &FinCategory {
        self.uf.base()
    }

    pub fn partition(&self) -> &FractionPartition {
        &self.partition
    }

    pub fn num_classes(&self) -> usize {
        self.partition.num_classes()
    }

    pub fn class_name(&self, class: Mor) -> &str {
        self.as_category.mor_name(class)
    }

    pub fn class_of(&self, t: &ThreeArrow) -> Result<Mor> {
        check_three_arrow(self.dd(), t)?;
        Ok(Mor(self.partition.try_class_of(self.base(), t)? as u32))
    }

    pub fn representative(&self, class: Mor) -> ThreeArrow {
        self.partition.representative(class.index())
    }

    pub fn members(&self, class: Mor) -> impl Iterator<Item = ThreeArrow> + '_ {
        self.partition.members(class.index())
    }

    /// `L(f)`.
    pub fn localise(&self, f: Mor) -> Mor {
        self.localisation.on_mor(f)
    }

    pub fn identity_class(&self, x: Obj) -> Mor {
        self.as_category.identity(x)
    }

    /// Class of the composite of two 3-arrows, by the strict construction or
    /// the first lax completion.
    pub fn compose_fractions(&self, t1: &ThreeArrow, t2: &ThreeArrow, strict: bool) -> Result<Mor> {
        let t = if strict {
            compose_strict(&self.uf, t1, t2)?
        } else {
            compose_lax(self.dd(), t1, t2)?
        };
        self.class_of(&t)
    }

    /// `L(d)⁻¹ = [d/1/1]`, checked against `[1/1/d]` and both inverse laws.
    pub fn inverse_of_denominator(&self, d: Mor) -> Result<Mor> {
        let c = self.base();
        if !self.dd().is_den(d) {
            return Err(Error::NotADenominator(c.mor_name(d).to_string()));
        }
        let (s, t) = (c.identity(c.src(d)), c.identity(c.tgt(d)));
        let left = self.class_of(&ThreeArrow::new(d, s, s))?;
        let right = self.class_of(&ThreeArrow::new(t, t, d))?;
        if left != right {
            return Err(Error::Internal(format!(
                "[d/1/1] and [1/1/d] differ for d = {}",
                c.mor_name(d)
            )));
        }
        self.check_inverse(self.localise(d), left)?;
        Ok(left)
    }

    fn check_inverse(&self, m: Mor, n: Mor) -> Result<()> {
        let fr = &self.as_category;
        if fr.comp(m, n) != Some(fr.identity(fr.src(m))) || fr.comp(n, m) != Some(fr.identity(fr.tgt(m))) {
            return Err(Error::Internal(format!(
                "{} and {} are not mutually inverse",
                fr.mor_name(m),
                fr.mor_name(n)
            )));
        }
        Ok(())
    }

    /// Inverse of `[b/d/a]` for `d ∈ D`: with `d = d1 d2`, `d1 b' = b d1'` and
    /// `a' d2 = d2' a`, the inverse is `[d2'/a'b'/d1']`.
    pub fn invert_class(&self, t: &ThreeArrow) -> Result<Mor> {
        let c = self.base();
        check_three_arrow(self.dd(), t)?;
        if !self.dd().is_den(t.f) {
            return Err(Error::NotADenominator(c.mor_name(t.f).to_string()));
        }
        let (d1, d2) = self.uf.factorise(t.f)?;
        let (b1, d1_) = self.uf.pushout(d1, t.b)?;
        let (a1, d2_) = self.uf.pullback(d2, t.a)?;
        let inv = self.class_of(&ThreeArrow::new(d2_, c.then(a1, b1), d1_))?;
        self.check_inverse(self.class_of(t)?, inv)?;
        Ok(inv)
    }

    /// `L(b)⁻¹ L(f) L(a)⁻¹` computed in the fraction category.
    pub fn split(&self, t: &ThreeArrow) -> Result<Mor> {
        check_three_arrow(self.dd(), t)?;
        let fr = &self.as_category;
        let inv_b = self.inverse_of_denominator(t.b)?;
        let inv_a = self.inverse_of_denominator(t.a)?;
        Ok(fr.then_all(&[inv_b, self.localise(t.f), inv_a]))
    }

    /// Classes that are isomorphisms, read off the composition table. On a
    /// weakly saturated base they are checked to be the classes with a
    /// denominator in the middle.
    pub fn classify_isomorphisms(&self) -> Result<Vec<Mor>> {
        let isos: Vec<Mor> = self.as_category.morphisms().filter(|&m| self.as_category.is_iso(m)).collect();
        if classify_saturation(self.dd()) == SaturationLevel::WeaklySaturated {
            let by_middle = self.denominator_classes();
            if by_middle != isos {
                return Err(Error::Internal(
                    "isomorphism classes differ from the classes with a denominator in the middle".into(),
                ));
            }
        }
        Ok(isos)
    }

    /// Classes whose members have a denominator in the middle.
    pub fn denominator_classes(&self) -> Vec<Mor> {
        self.as_category
            .morphisms()
            .filter(|&m| self.dd().is_den(self.representative(m).f))
            .collect()
    }

    /// Whether every morphism inverted by `L` is a denominator.
    pub fn is_saturated(&self) -> bool {
        self.base()
            .morphisms()
            .all(|f| self.dd().is_den(f) || !self.as_category.is_iso(self.localise(f)))
    }
}

/// The functor `F̂` on the fraction category with `F̂ L = F`, given by
/// `F̂[b/f/a] = (F b)⁻¹ (F f) (F a)⁻¹` on every representative.
pub fn induced_functor(
    fc: &FractionCategory,
    functor: &FunctorTable,
    target: &FinCategory,
    check_inverts: bool,
) -> Result<FunctorTable> {
    let c = fc.base();
    let report = validate_functor(functor, c, target);
    if !report.is_ok() {
        return Err(Error::Precondition(format!("not a functor: {}", report.violations[0])));
    }
    let inverse = |d: Mor| {
        target.inverse(functor.on_mor(d)).ok_or_else(|| {
            Error::Precondition(format!("the image of denominator {} is not invertible", c.mor_name(d)))
        })
    };
    if check_inverts {
        for d in fc.dd().members(Which::D) {
            inverse(d)?;
        }
    }
    let mut mor_map = Vec::with_capacity(fc.num_classes());
    for k in fc.as_category.morphisms() {
        let mut image = None;
        for t in fc.members(k) {
            let v = target.then_all(&[inverse(t.b)?, functor.on_mor(t.f), inverse(t.a)?]);
            match image {
                None => image = Some(v),
                Some(w) if w != v => {
                    return Err(Error::Internal(format!(
                        "induced functor depends on the representative of {}",
                        fc.class_name(k)
                    )))
                }
                _ => {}
            }
        }
        mor_map.push(image.expect("classes are non-empty"));
    }
    let hat = FunctorTable {
        obj_map: functor.obj_map.clone(),
        mor_map,
    };
    if fc.localisation.then(&hat) != *functor {
        return Err(Error::Internal("induced functor does not restrict to F along L".into()));
    }
    Ok(hat)
}

/// The transformation `F̂ → Ĝ` induced by `alpha: F → G`, which has the same
/// components; naturality is checked against every class.
pub fn induced_transformation(
    fc: &FractionCategory,
    f: &FunctorTable,
    g: &FunctorTable,
    target: &FinCategory,
    alpha: &[Mor],
) -> Result<Vec<Mor>> {
    let c = fc.base();
    if alpha.len() != c.num_objects() {
        return Err(Error::Precondition("transformation has the wrong number of components".into()));
    }
    for x in c.objects() {
        let a = alpha[x.index()];
        if target.src(a) != f.on_obj(x) || target.tgt(a) != g.on_obj(x) {
            return Err(Error::Precondition(format!("component at {} has the wrong endpoints", c.obj_name(x))));
        }
    }
    for m in c.morphisms() {
        let (x, y) = (c.src(m).index(), c.tgt(m).index());
        if target.comp(f.on_mor(m), alpha[y]) != target.comp(alpha[x], g.on_mor(m)) {
            return Err(Error::Precondition(format!("transformation is not natural at {}", c.mor_name(m))));
        }
    }
    let f_hat = induced_functor(fc, f, target, true)?;
    let g_hat = induced_functor(fc, g, target, true)?;
    let fr = &fc.as_category;
    for k in fr.morphisms() {
        let (x, y) = (fr.src(k).index(), fr.tgt(k).index());
        if target.comp(f_hat.on_mor(k), alpha[y]) != target.comp(alpha[x], g_hat.on_mor(k)) {
            return Err(Error::Internal(format!(
                "induced transformation is not natural at {}",
                fc.class_name(k)
            )));
        }
    }
    Ok(alpha.to_vec())
}

/// `Fr F` with `(Fr F)[b/f/a] = [F b / F f / F a]`.
pub fn induced_functor_on_fractions(
    functor: &FunctorTable,
    source: &FractionCategory,
    target: &FractionCategory,
) -> Result<FunctorTable> {
    let report = validate_functor(functor, source.base(), target.base());
    if !report.is_ok() {
        return Err(Error::Precondition(format!("not a functor: {}", report.violations[0])));
    }
    if !preserves_denominators(functor, source.dd(), target.dd()) {
        return Err(Error::Precondition("functor does not preserve denominators".into()));
    }
    let mut mor_map = Vec::with_capacity(source.num_classes());
    for k in source.as_category.morphisms() {
        let mut image = None;
        for t in source.members(k) {
            let ft = ThreeArrow::new(functor.on_mor(t.b), functor.on_mor(t.f), functor.on_mor(t.a));
            let v = target.class_of(&ft)?;
            match image {
                None => image = Some(v),
                Some(w) if w != v => {
                    return Err(Error::Internal(format!(
                        "Fr F depends on the representative of {}",
                        source.class_name(k)
                    )))
                }
                _ => {}
            }
        }
        mor_map.push(image.expect("classes are non-empty"));
    }
    let fr_f = FunctorTable {
        obj_map: functor.obj_map.clone(),
        mor_map,
    };
    if functor.then(&target.localisation) != source.localisation.then(&fr_f) {
        return Err(Error::Internal("L F and (Fr F) L differ".into()));
    }
    Ok(fr_f)
}

/// Whether two structures on the same base and `D` localise identically.
pub fn st_independence_check(dd1: &DenominatorData, dd2: &DenominatorData) -> Result<bool> {
    if dd1.base != dd2.base || dd1.members(Which::D) != dd2.members(Which::D) {
        return Err(Error::Precondition("structures differ in base or denominators".into()));
    }
    let f1 = build_fraction_category(dd1.clone())?;
    let f2 = build_fraction_category(dd2.clone())?;
    Ok(f1.partition.labels() == f2.partition.labels()
        && f1.as_category == f2.as_category
        && f1.localisation == f2.localisation)
}

/// Hypothesis variant of the full-subcategory criterion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resolution {
    /// Denominators into every object from `U`; S-denominators out of `U` stay in `U`.
    S,
    /// Denominators from every object into `U`; T-denominators into `U` start in `U`.
    T,
}

/// Outcome of [`subcategory_equivalence`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalenceReport {
    /// Objects with no resolving denominator.
    pub unresolved: Vec<String>,
    /// S- or T-denominators leaving `U` the wrong way.
    pub escaping: Vec<String>,
    /// Failed axioms of the restricted structure.
    pub subcategory_failures: Vec<&'static str>,
    pub full: Option<bool>,
    pub faithful: Option<bool>,
    pub dense: Option<bool>,
}

impl EquivalenceReport {
    pub fn hypothesis_holds(&self) -> bool {
        self.unresolved.is_empty() && self.escaping.is_empty() && self.subcategory_failures.is_empty()
    }

    pub fn is_equivalence(&self) -> bool {
        self.full == Some(true) && self.faithful == Some(true) && self.dense == Some(true)
    }
}

impl fmt::Display for EquivalenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |v: &[String]| if v.is_empty() { "none".to_string() } else { v.join(" ") };
        writeln!(f, "hypothesis {}", self.hypothesis_holds())?;
        writeln!(f, "unresolved {}", list(&self.unresolved))?;
        writeln!(f, "escaping {}", list(&self.escaping))?;
        let fails: Vec<String> = self.subcategory_failures.iter().map(|s| s.to_string()).collect();
        writeln!(f, "subcategory-failures {}", list(&fails))?;
        let show = |b: Option<bool>| b.map_or("skipped".to_string(), |b| b.to_string());
        writeln!(f, "full {}", show(self.full))?;
        writeln!(f, "faithful {}", show(self.faithful))?;
        writeln!(f, "dense {}", show(self.dense))?;
        writeln!(f, "equivalence {}", self.is_equivalence())
    }
}

/// Checks the resolution hypothesis for the full subcategory on `objects`,
/// then tests whether `Fr(inc)` is full, faithful and dense.
pub fn subcategory_equivalence(dd: &DenominatorData, objects: &[Obj], variant: Resolution) -> Result<EquivalenceReport> {
    if objects.is_empty() {
        return Err(Error::Precondition("the object subset is empty".into()));
    }
    let c = &dd.base;
    let in_u: BTreeSet<Obj> = objects.iter().copied().collect();
    let mut unresolved = Vec::new();
    for x in c.objects() {
        let resolved = match variant {
            Resolution::S => c.into(x).any(|d| dd.is_den(d) && in_u.contains(&c.src(d))),
            Resolution::T => c.out_of(x).any(|d| dd.is_den(d) && in_u.contains(&c.tgt(d))),
        };
        if !resolved {
            unresolved.push(c.obj_name(x).to_string());
        }
    }
    let escaping = match variant {
        Resolution::S => dd
            .members(Which::S)
            .into_iter()
            .filter(|&i| in_u.contains(&c.src(i)) && !in_u.contains(&c.tgt(i)))
            .map(|m| c.mor_name(m).to_string())
            .collect(),
        Resolution::T => dd
            .members(Which::T)
            .into_iter()
            .filter(|&p| in_u.contains(&c.tgt(p)) && !in_u.contains(&c.src(p)))
            .map(|m| c.mor_name(m).to_string())
            .collect(),
    };
    let (sub, inc) = dd.restrict(objects);
    let subcategory_failures = check_axioms(&sub).failed();
    let mut report = EquivalenceReport {
        unresolved,
        escaping,
        subcategory_failures,
        full: None,
        faithful: None,
        dense: None,
    };
    if !report.subcategory_failures.is_empty() {
        return Ok(report);
    }
    let fc_sub = build_fraction_category(sub)?;
    let fc = build_fraction_category(dd.clone())?;
    let fr_inc = induced_functor_on_fractions(&inc, &fc_sub, &fc)?;
    let (frs, frc) = (&fc_sub.as_category, &fc.as_category);
    let (mut full, mut faithful) = (true, true);
    for u in frs.objects() {
        for v in frs.objects() {
            let image: BTreeSet<Mor> = frs.hom(u, v).iter().map(|&m| fr_inc.on_mor(m)).collect();
            faithful &= image.len() == frs.hom(u, v).len();
            full &= image.len() == frc.hom(fr_inc.on_obj(u), fr_inc.on_obj(v)).len();
        }
    }
    let dense = frc.objects().all(|x| {
        objects
            .iter()
            .any(|&u| frc.hom(x, u).iter().any(|&m| frc.is_iso(m)))
    });
    report.full = Some(full);
    report.faithful = Some(faithful);
    report.dense = Some(dense);
    Ok(report)
}
