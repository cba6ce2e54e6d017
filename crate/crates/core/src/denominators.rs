//! Denominator data, the saturation ladder, and the uni-fractionable axioms.
//!
//! A [`DenominatorData`] fixes the three morphism subsets `D ⊇ S, T` of a
//! finite category. [`check_axioms`] verifies weakly universal Ore
//! completions (WU) and factorisations (Fac) by exhaustive search and keeps
//! one deterministic witness per query; [`UniFractionable`] wraps data that
//! passed every check together with those witness caches.

use std::collections::HashMap;
use std::fmt;

use crate::category::{validate_functor, FinCategory, FunctorTable, Mor, Obj, ValidationReport};
use crate::error::{Error, Result};

/// Selects one of the three denominator subsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Which {
    D,
    S,
    T,
}

impl fmt::Display for Which {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Which::D => "D",
            Which::S => "S",
            Which::T => "T",
        })
    }
}

/// A finite category with denominators `D` and distinguished subsets `S`, `T`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DenominatorData {
    pub base: FinCategory,
    d: Vec<bool>,
    s: Vec<bool>,
    t: Vec<bool>,
}

impl DenominatorData {
    pub fn new(base: FinCategory, d: &[Mor], s: &[Mor], t: &[Mor]) -> Result<Self> {
        let n = base.num_morphisms();
        let mask = |ms: &[Mor]| -> Result<Vec<bool>> {
            let mut v = vec![false; n];
            for &m in ms {
                if m.index() >= n {
                    return Err(Error::UnknownId {
                        kind: "morphism",
                        id: format!("#{}", m.0),
                    });
                }
                v[m.index()] = true;
            }
            Ok(v)
        };
        Ok(Self {
            d: mask(d)?,
            s: mask(s)?,
            t: mask(t)?,
            base,
        })
    }

    pub fn from_names<S: AsRef<str>>(base: FinCategory, d: &[S], s: &[S], t: &[S]) -> Result<Self> {
        let look = |names: &[S]| -> Result<Vec<Mor>> {
            names.iter().map(|n| base.lookup_mor(n.as_ref())).collect()
        };
        let (d, s, t) = (look(d)?, look(s)?, look(t)?);
        Self::new(base, &d, &s, &t)
    }

    /// `S = T = D`.
    pub fn uniform(base: FinCategory, d: &[Mor]) -> Result<Self> {
        Self::new(base, d, d, d)
    }

    pub fn is_den(&self, m: Mor) -> bool {
        self.d[m.index()]
    }

    pub fn is_s(&self, m: Mor) -> bool {
        self.s[m.index()]
    }

    pub fn is_t(&self, m: Mor) -> bool {
        self.t[m.index()]
    }

    pub fn contains(&self, which: Which, m: Mor) -> bool {
        match which {
            Which::D => self.is_den(m),
            Which::S => self.is_s(m),
            Which::T => self.is_t(m),
        }
    }

    pub fn members(&self, which: Which) -> Vec<Mor> {
        self.base.morphisms().filter(|&m| self.contains(which, m)).collect()
    }

    /// Same base and `D`, different `S`, `T`.
    pub fn with_st(&self, s: &[Mor], t: &[Mor]) -> Result<Self> {
        Self::new(self.base.clone(), &self.members(Which::D), s, t)
    }

    /// The dual structure on the opposite category: weak pullbacks become
    /// weak pushouts, so `S` and `T` trade places.
    pub fn opposite(&self) -> Self {
        Self {
            base: self.base.opposite(),
            d: self.d.clone(),
            s: self.t.clone(),
            t: self.s.clone(),
        }
    }

    /// The full subcategory on `objects` with every subset intersected with
    /// its morphisms, plus the inclusion functor.
    pub fn restrict(&self, objects: &[Obj]) -> (DenominatorData, FunctorTable) {
        let (sub, inc) = self.base.full_subcategory(objects);
        let pick = |mask: &Vec<bool>| inc.mor_map.iter().map(|m| mask[m.index()]).collect();
        (
            DenominatorData {
                d: pick(&self.d),
                s: pick(&self.s),
                t: pick(&self.t),
                base: sub,
            },
            inc,
        )
    }
}

/// Why a closure predicate fails.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Counterexample {
    /// The identity of this object is missing from the subset.
    MissingIdentity(Obj),
    /// `f`, `g` in the subset but `fg` is not.
    NotClosed { f: Mor, g: Mor, fg: Mor },
    /// Two of `f`, `g`, `fg` in `D` but not the third.
    TwoOfThree { f: Mor, g: Mor, fg: Mor },
    /// `fg`, `gh ∈ D` but one of `f`, `g`, `h`, `fgh` is not.
    TwoOfSix { f: Mor, g: Mor, h: Mor },
}

impl Counterexample {
    pub fn render(&self, c: &FinCategory) -> String {
        match *self {
            Counterexample::MissingIdentity(o) => format!("object={}", c.obj_name(o)),
            Counterexample::NotClosed { f, g, fg } | Counterexample::TwoOfThree { f, g, fg } => {
                format!("f={} g={} fg={}", c.mor_name(f), c.mor_name(g), c.mor_name(fg))
            }
            Counterexample::TwoOfSix { f, g, h } => {
                format!("f={} g={} h={}", c.mor_name(f), c.mor_name(g), c.mor_name(h))
            }
        }
    }
}

/// Identities present and closed under composition.
pub fn multiplicative_counterexample(dd: &DenominatorData, which: Which) -> Option<Counterexample> {
    let c = &dd.base;
    for o in c.objects() {
        if !dd.contains(which, c.identity(o)) {
            return Some(Counterexample::MissingIdentity(o));
        }
    }
    for f in c.morphisms().filter(|&f| dd.contains(which, f)) {
        for g in c.out_of(c.tgt(f)).filter(|&g| dd.contains(which, g)) {
            let fg = c.then(f, g);
            if !dd.contains(which, fg) {
                return Some(Counterexample::NotClosed { f, g, fg });
            }
        }
    }
    None
}

pub fn is_multiplicative(dd: &DenominatorData, which: Which) -> bool {
    multiplicative_counterexample(dd, which).is_none()
}

pub fn two_of_three_counterexample(dd: &DenominatorData) -> Option<Counterexample> {
    let c = &dd.base;
    for f in c.morphisms() {
        for g in c.out_of(c.tgt(f)) {
            let fg = c.then(f, g);
            let count = [f, g, fg].iter().filter(|&&m| dd.is_den(m)).count();
            if count == 2 {
                return Some(Counterexample::TwoOfThree { f, g, fg });
            }
        }
    }
    None
}

pub fn is_two_of_three(dd: &DenominatorData) -> bool {
    two_of_three_counterexample(dd).is_none()
}

pub fn two_of_six_counterexample(dd: &DenominatorData) -> Option<Counterexample> {
    let c = &dd.base;
    for f in c.morphisms() {
        for g in c.out_of(c.tgt(f)) {
            if !dd.is_den(c.then(f, g)) {
                continue;
            }
            for h in c.out_of(c.tgt(g)) {
                if !dd.is_den(c.then(g, h)) {
                    continue;
                }
                let fgh = c.then_all(&[f, g, h]);
                if ![f, g, h, fgh].iter().all(|&m| dd.is_den(m)) {
                    return Some(Counterexample::TwoOfSix { f, g, h });
                }
            }
        }
    }
    None
}

pub fn is_two_of_six(dd: &DenominatorData) -> bool {
    two_of_six_counterexample(dd).is_none()
}

/// Position of `D` on the saturation ladder, as far as it is decidable
/// without localising. Saturatedness proper is decided on the fraction
/// category.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SaturationLevel {
    None,
    Multiplicative,
    SemiSaturated,
    WeaklySaturated,
}

impl fmt::Display for SaturationLevel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SaturationLevel::None => "none",
            SaturationLevel::Multiplicative => "multiplicative",
            SaturationLevel::SemiSaturated => "semi-saturated",
            SaturationLevel::WeaklySaturated => "weakly-saturated",
        })
    }
}

pub fn classify_saturation(dd: &DenominatorData) -> SaturationLevel {
    if !is_multiplicative(dd, Which::D) {
        SaturationLevel::None
    } else if is_two_of_six(dd) {
        SaturationLevel::WeaklySaturated
    } else if is_two_of_three(dd) {
        SaturationLevel::SemiSaturated
    } else {
        SaturationLevel::Multiplicative
    }
}

/// Which side of (WU) a completion answers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OreKind {
    /// Given `i ∈ S` and `f` with common source: `i f' = f i'`, `i' ∈ S`.
    Pushout,
    /// Given `p ∈ T` and `f` with common target: `f' p = p' f`, `p' ∈ T`.
    Pullback,
}

/// A weakly universal Ore completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OreWitness {
    pub kind: OreKind,
    /// The given `i` or `p`.
    pub den: Mor,
    pub f: Mor,
    pub f_prime: Mor,
    /// The completing `i'` or `p'`.
    pub den_prime: Mor,
}

impl OreWitness {
    pub fn commutes(&self, c: &FinCategory) -> bool {
        match self.kind {
            OreKind::Pushout => square_commutes(c, (self.den, self.f_prime), (self.f, self.den_prime)),
            OreKind::Pullback => square_commutes(c, (self.f_prime, self.den), (self.den_prime, self.f)),
        }
    }

    /// Re-checks commutativity, membership of the completing leg, and weak
    /// universality.
    pub fn revalidate(&self, dd: &DenominatorData) -> bool {
        let c = &dd.base;
        match self.kind {
            OreKind::Pushout => {
                dd.is_s(self.den)
                    && dd.is_s(self.den_prime)
                    && is_weak_pushout(c, self.den, self.f, self.f_prime, self.den_prime)
                        .unwrap_or(false)
            }
            OreKind::Pullback => {
                dd.is_t(self.den)
                    && dd.is_t(self.den_prime)
                    && is_weak_pullback(c, self.den, self.f, self.f_prime, self.den_prime)
                        .unwrap_or(false)
            }
        }
    }
}

fn square_commutes(c: &FinCategory, top: (Mor, Mor), bottom: (Mor, Mor)) -> bool {
    match (c.comp(top.0, top.1), c.comp(bottom.0, bottom.1)) {
        (Some(a), Some(b)) => a == b,
        _ => false,
    }
}

/// Weak pushout test for the square `i f' = f i'`: every cocone `(u, v)` with
/// `i u = f v` admits some `w` with `f' w = u` and `i' w = v`.
pub fn is_weak_pushout(c: &FinCategory, i: Mor, f: Mor, f_prime: Mor, i_prime: Mor) -> Result<bool> {
    if !square_commutes(c, (i, f_prime), (f, i_prime)) {
        return Err(Error::Precondition(format!(
            "square ({}, {}, {}, {}) does not commute",
            c.mor_name(i),
            c.mor_name(f),
            c.mor_name(f_prime),
            c.mor_name(i_prime)
        )));
    }
    let corner = c.tgt(f_prime);
    for u in c.out_of(c.tgt(i)) {
        let iu = c.then(i, u);
        for &v in c.hom(c.tgt(f), c.tgt(u)) {
            if c.then(f, v) != iu {
                continue;
            }
            let mediated = c
                .hom(corner, c.tgt(u))
                .iter()
                .any(|&w| c.then(f_prime, w) == u && c.then(i_prime, w) == v);
            if !mediated {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Weak pullback test for the square `f' p = p' f`: every cone `(u, v)` with
/// `u p = v f` admits some `w` with `w f' = u` and `w p' = v`.
pub fn is_weak_pullback(c: &FinCategory, p: Mor, f: Mor, f_prime: Mor, p_prime: Mor) -> Result<bool> {
    if !square_commutes(c, (f_prime, p), (p_prime, f)) {
        return Err(Error::Precondition(format!(
            "square ({}, {}, {}, {}) does not commute",
            c.mor_name(p),
            c.mor_name(f),
            c.mor_name(f_prime),
            c.mor_name(p_prime)
        )));
    }
    let corner = c.src(f_prime);
    for u in c.into(c.src(p)) {
        let up = c.then(u, p);
        for &v in c.hom(c.src(u), c.src(f)) {
            if c.then(v, f) != up {
                continue;
            }
            let mediated = c
                .hom(c.src(u), corner)
                .iter()
                .any(|&w| c.then(w, f_prime) == u && c.then(w, p_prime) == v);
            if !mediated {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// All commuting pushout-side completions `(f', i')` of `(i, f)` with
/// `i' ∈ S`, in index order of `(f', i')`; weak universality not tested.
pub fn pushout_completions(dd: &DenominatorData, i: Mor, f: Mor) -> Vec<(Mor, Mor)> {
    let c = &dd.base;
    let mut out = Vec::new();
    for f_prime in c.out_of(c.tgt(i)) {
        for &i_prime in c.hom(c.tgt(f), c.tgt(f_prime)) {
            if dd.is_s(i_prime) && c.then(i, f_prime) == c.then(f, i_prime) {
                out.push((f_prime, i_prime));
            }
        }
    }
    out
}

/// All commuting pullback-side completions `(f', p')` of `(p, f)` with
/// `p' ∈ T`, in index order of `(f', p')`; weak universality not tested.
pub fn pullback_completions(dd: &DenominatorData, p: Mor, f: Mor) -> Vec<(Mor, Mor)> {
    let c = &dd.base;
    let mut out = Vec::new();
    for f_prime in c.into(c.src(p)) {
        for &p_prime in c.hom(c.src(f_prime), c.src(f)) {
            if dd.is_t(p_prime) && c.then(f_prime, p) == c.then(p_prime, f) {
                out.push((f_prime, p_prime));
            }
        }
    }
    out
}

/// Outcome of the (WU) sweep.
#[derive(Debug, Clone, Default)]
pub struct WuReport {
    /// One index-smallest weakly universal completion per answered query.
    pub witnesses: Vec<OreWitness>,
    /// Queries `(kind, i or p, f)` with no weakly universal completion.
    pub failures: Vec<(OreKind, Mor, Mor)>,
}

impl WuReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_wu(dd: &DenominatorData) -> WuReport {
    let c = &dd.base;
    let mut report = WuReport::default();
    for i in dd.members(Which::S) {
        for f in c.out_of(c.src(i)) {
            let found = pushout_completions(dd, i, f)
                .into_iter()
                .find(|&(fp, ip)| is_weak_pushout(c, i, f, fp, ip).unwrap_or(false));
            match found {
                Some((f_prime, den_prime)) => report.witnesses.push(OreWitness {
                    kind: OreKind::Pushout,
                    den: i,
                    f,
                    f_prime,
                    den_prime,
                }),
                None => report.failures.push((OreKind::Pushout, i, f)),
            }
        }
    }
    for p in dd.members(Which::T) {
        for f in c.into(c.tgt(p)) {
            let found = pullback_completions(dd, p, f)
                .into_iter()
                .find(|&(fp, pp)| is_weak_pullback(c, p, f, fp, pp).unwrap_or(false));
            match found {
                Some((f_prime, den_prime)) => report.witnesses.push(OreWitness {
                    kind: OreKind::Pullback,
                    den: p,
                    f,
                    f_prime,
                    den_prime,
                }),
                None => report.failures.push((OreKind::Pullback, p, f)),
            }
        }
    }
    report
}

/// `d = i p` with `i ∈ S`, `p ∈ T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FactorisationWitness {
    pub d: Mor,
    pub i: Mor,
    pub p: Mor,
}

impl FactorisationWitness {
    pub fn revalidate(&self, dd: &DenominatorData) -> bool {
        dd.is_s(self.i) && dd.is_t(self.p) && dd.base.comp(self.i, self.p) == Some(self.d)
    }
}

/// All factorisations `d = i p`, ordered by `(p, i)` index.
pub fn factorisations(dd: &DenominatorData, d: Mor) -> Vec<(Mor, Mor)> {
    let c = &dd.base;
    let mut out = Vec::new();
    for p in c.into(c.tgt(d)).filter(|&p| dd.is_t(p)) {
        for &i in c.hom(c.src(d), c.src(p)) {
            if dd.is_s(i) && c.then(i, p) == d {
                out.push((i, p));
            }
        }
    }
    out
}

/// Outcome of the (Fac) sweep.
#[derive(Debug, Clone, Default)]
pub struct FacReport {
    pub witnesses: Vec<FactorisationWitness>,
    pub failures: Vec<Mor>,
}

impl FacReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn check_fac(dd: &DenominatorData) -> FacReport {
    let mut report = FacReport::default();
    for d in dd.members(Which::D) {
        match factorisations(dd, d).first() {
            Some(&(i, p)) => report.witnesses.push(FactorisationWitness { d, i, p }),
            None => report.failures.push(d),
        }
    }
    report
}

/// Itemised verdict on every uni-fractionable axiom.
///
/// When the base fails validation the remaining checks are skipped and left
/// as `None`.
#[derive(Debug, Clone)]
pub struct AxiomReport {
    pub base: ValidationReport,
    pub d_multiplicative: Option<Option<Counterexample>>,
    pub d_two_of_three: Option<Option<Counterexample>>,
    pub s_multiplicative: Option<Option<Counterexample>>,
    pub t_multiplicative: Option<Option<Counterexample>>,
    pub s_not_in_d: Vec<Mor>,
    pub t_not_in_d: Vec<Mor>,
    pub saturation: Option<SaturationLevel>,
    pub wu: Option<WuReport>,
    pub fac: Option<FacReport>,
}

impl AxiomReport {
    /// Names of the failed axioms, in report order.
    pub fn failed(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.base.is_ok() {
            out.push("category");
        }
        let fails = |x: &Option<Option<Counterexample>>| matches!(x, Some(Some(_)));
        if fails(&self.d_multiplicative) {
            out.push("(Cat) D");
        }
        if fails(&self.d_two_of_three) {
            out.push("(2 of 3)");
        }
        if fails(&self.s_multiplicative) {
            out.push("(Cat) S");
        }
        if fails(&self.t_multiplicative) {
            out.push("(Cat) T");
        }
        if !self.s_not_in_d.is_empty() {
            out.push("S in D");
        }
        if !self.t_not_in_d.is_empty() {
            out.push("T in D");
        }
        if self.wu.as_ref().is_some_and(|w| !w.holds()) {
            out.push("(WU)");
        }
        if self.fac.as_ref().is_some_and(|f| !f.holds()) {
            out.push("(Fac)");
        }
        out
    }

    pub fn holds(&self) -> bool {
        self.failed().is_empty()
    }

    /// Structured text: one `<axiom> PASS|FAIL [witness ...]` line per
    /// axiom; `witnesses` adds one line per cached witness.
    pub fn render(&self, c: &FinCategory, witnesses: bool) -> String {
        let mut out = String::new();
        let line = |out: &mut String, name: &str, cex: &Option<Option<Counterexample>>| match cex {
            None => out.push_str(&format!("{name} SKIPPED\n")),
            Some(None) => out.push_str(&format!("{name} PASS\n")),
            Some(Some(x)) => out.push_str(&format!("{name} FAIL witness {}\n", x.render(c))),
        };
        if self.base.is_ok() {
            out.push_str("category PASS\n");
        } else {
            out.push_str(&format!(
                "category FAIL witness {}\n",
                self.base.violations[0]
            ));
        }
        line(&mut out, "(Cat) D", &self.d_multiplicative);
        line(&mut out, "(2 of 3)", &self.d_two_of_three);
        line(&mut out, "(Cat) S", &self.s_multiplicative);
        line(&mut out, "(Cat) T", &self.t_multiplicative);
        for (name, stray) in [("S in D", &self.s_not_in_d), ("T in D", &self.t_not_in_d)] {
            match stray.first() {
                None => out.push_str(&format!("{name} PASS\n")),
                Some(&m) => out.push_str(&format!("{name} FAIL witness m={}\n", c.mor_name(m))),
            }
        }
        match &self.wu {
            None => out.push_str("(WU) SKIPPED\n"),
            Some(wu) => {
                match wu.failures.first() {
                    None => out.push_str("(WU) PASS\n"),
                    Some(&(kind, den, f)) => out.push_str(&format!(
                        "(WU) FAIL witness {}={} f={}\n",
                        if kind == OreKind::Pushout { "i" } else { "p" },
                        c.mor_name(den),
                        c.mor_name(f)
                    )),
                }
                if witnesses {
                    for &(kind, den, f) in wu.failures.iter().skip(1) {
                        out.push_str(&format!(
                            "(WU) FAIL witness {}={} f={}\n",
                            if kind == OreKind::Pushout { "i" } else { "p" },
                            c.mor_name(den),
                            c.mor_name(f)
                        ));
                    }
                    for w in &wu.witnesses {
                        let (a, b) = match w.kind {
                            OreKind::Pushout => ("i", "i'"),
                            OreKind::Pullback => ("p", "p'"),
                        };
                        out.push_str(&format!(
                            "(WU) completion {a}={} f={} f'={} {b}={}\n",
                            c.mor_name(w.den),
                            c.mor_name(w.f),
                            c.mor_name(w.f_prime),
                            c.mor_name(w.den_prime)
                        ));
                    }
                }
            }
        }
        match &self.fac {
            None => out.push_str("(Fac) SKIPPED\n"),
            Some(fac) => {
                match fac.failures.first() {
                    None => out.push_str("(Fac) PASS\n"),
                    Some(&d) => out.push_str(&format!("(Fac) FAIL witness d={}\n", c.mor_name(d))),
                }
                if witnesses {
                    for w in &fac.witnesses {
                        out.push_str(&format!(
                            "(Fac) factorisation d={} i={} p={}\n",
                            c.mor_name(w.d),
                            c.mor_name(w.i),
                            c.mor_name(w.p)
                        ));
                    }
                }
            }
        }
        if let Some(level) = self.saturation {
            out.push_str(&format!("saturation {level}\n"));
        }
        out.push_str(&format!("uni-fractionable {}\n", self.holds()));
        out
    }
}

/// Runs every axiom check. (WU) and (Fac) are only attempted on a valid base.
pub fn check_axioms(dd: &DenominatorData) -> AxiomReport {
    let base = dd.base.validate();
    if !base.is_ok() {
        return AxiomReport {
            base,
            d_multiplicative: None,
            d_two_of_three: None,
            s_multiplicative: None,
            t_multiplicative: None,
            s_not_in_d: Vec::new(),
            t_not_in_d: Vec::new(),
            saturation: None,
            wu: None,
            fac: None,
        };
    }
    let stray = |which| -> Vec<Mor> {
        dd.members(which).into_iter().filter(|&m| !dd.is_den(m)).collect()
    };
    AxiomReport {
        base,
        d_multiplicative: Some(multiplicative_counterexample(dd, Which::D)),
        d_two_of_three: Some(two_of_three_counterexample(dd)),
        s_multiplicative: Some(multiplicative_counterexample(dd, Which::S)),
        t_multiplicative: Some(multiplicative_counterexample(dd, Which::T)),
        s_not_in_d: stray(Which::S),
        t_not_in_d: stray(Which::T),
        saturation: Some(classify_saturation(dd)),
        wu: Some(check_wu(dd)),
        fac: Some(check_fac(dd)),
    }
}

pub fn is_uni_fractionable(dd: &DenominatorData) -> bool {
    check_axioms(dd).holds()
}

/// Denominator data that satisfies every uni-fractionable axiom, with the
/// deterministic witnesses found while checking.
#[derive(Debug, Clone)]
pub struct UniFractionable {
    dd: DenominatorData,
    pushouts: HashMap<(Mor, Mor), (Mor, Mor)>,
    pullbacks: HashMap<(Mor, Mor), (Mor, Mor)>,
    factorisations: HashMap<Mor, (Mor, Mor)>,
    report: AxiomReport,
}

impl UniFractionable {
    pub fn new(dd: DenominatorData) -> Result<Self> {
        let report = check_axioms(&dd);
        if !report.holds() {
            return Err(Error::NotUniFractionable(report.failed().join(", ")));
        }
        let wu = report.wu.as_ref().expect("checked on a valid base");
        let fac = report.fac.as_ref().expect("checked on a valid base");
        let mut pushouts = HashMap::new();
        let mut pullbacks = HashMap::new();
        for w in &wu.witnesses {
            let map = match w.kind {
                OreKind::Pushout => &mut pushouts,
                OreKind::Pullback => &mut pullbacks,
            };
            map.insert((w.den, w.f), (w.f_prime, w.den_prime));
        }
        let factorisations = fac.witnesses.iter().map(|w| (w.d, (w.i, w.p))).collect();
        Ok(Self {
            dd,
            pushouts,
            pullbacks,
            factorisations,
            report,
        })
    }

    pub fn dd(&self) -> &DenominatorData {
        &self.dd
    }

    pub fn base(&self) -> &FinCategory {
        &self.dd.base
    }

    pub fn report(&self) -> &AxiomReport {
        &self.report
    }

    /// Cached `(i, p)` with `d = i p`.
    pub fn factorise(&self, d: Mor) -> Result<(Mor, Mor)> {
        self.factorisations
            .get(&d)
            .copied()
            .ok_or_else(|| Error::Internal(format!("no factorisation cached for {}", self.base().mor_name(d))))
    }

    /// Cached `(f', i')` with `i f' = f i'`, `i' ∈ S`.
    pub fn pushout(&self, i: Mor, f: Mor) -> Result<(Mor, Mor)> {
        self.pushouts.get(&(i, f)).copied().ok_or_else(|| {
            Error::Internal(format!(
                "no Ore completion cached for i={} f={}",
                self.base().mor_name(i),
                self.base().mor_name(f)
            ))
        })
    }

    /// Cached `(f', p')` with `f' p = p' f`, `p' ∈ T`.
    pub fn pullback(&self, p: Mor, f: Mor) -> Result<(Mor, Mor)> {
        self.pullbacks.get(&(p, f)).copied().ok_or_else(|| {
            Error::Internal(format!(
                "no Ore completion cached for p={} f={}",
                self.base().mor_name(p),
                self.base().mor_name(f)
            ))
        })
    }
}

/// Whether `functor` sends denominators to denominators.
pub fn preserves_denominators(functor: &FunctorTable, source: &DenominatorData, target: &DenominatorData) -> bool {
    source
        .members(Which::D)
        .iter()
        .all(|&d| target.is_den(functor.on_mor(d)))
}

/// Whether `functor` is a morphism of uni-fractionable categories: it maps
/// `D`, `S`, `T` into `D`, `S`, `T` respectively.
pub fn validate_uf_morphism(
    functor: &FunctorTable,
    source: &DenominatorData,
    target: &DenominatorData,
) -> Result<bool> {
    let report = validate_functor(functor, &source.base, &target.base);
    if !report.is_ok() {
        return Err(Error::Precondition(format!("not a functor: {}", report.violations[0])));
    }
    Ok([Which::D, Which::S, Which::T].into_iter().all(|w| {
        source
            .members(w)
            .iter()
            .all(|&m| target.contains(w, functor.on_mor(m)))
    }))
}
