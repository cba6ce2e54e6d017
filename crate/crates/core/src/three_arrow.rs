//! 3-arrows, fraction equality as a congruence closure, normal forms and
//! common denominators.

use std::collections::HashMap;
use std::fmt;

use crate::category::{FinCategory, Mor, Obj};
use crate::denominators::{DenominatorData, UniFractionable};
use crate::error::{Error, Result};
use crate::union_find::UnionFind;

/// `X ⇐b X̃ →f Ỹ ⇐a Y`, representing `L(b)⁻¹ L(f) L(a)⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ThreeArrow {
    pub b: Mor,
    pub f: Mor,
    pub a: Mor,
}

impl ThreeArrow {
    pub fn new(b: Mor, f: Mor, a: Mor) -> Self {
        Self { b, f, a }
    }

    /// `(1, f, 1)`.
    pub fn of_morphism(c: &FinCategory, f: Mor) -> Self {
        Self::new(c.identity(c.src(f)), f, c.identity(c.tgt(f)))
    }

    pub fn source(&self, c: &FinCategory) -> Obj {
        c.tgt(self.b)
    }

    pub fn target(&self, c: &FinCategory) -> Obj {
        c.src(self.a)
    }

    pub fn is_parallel(&self, other: &ThreeArrow, c: &FinCategory) -> bool {
        self.source(c) == other.source(c) && self.target(c) == other.target(c)
    }

    /// The comma form `b,f,a` with file ids.
    pub fn render(&self, c: &FinCategory) -> String {
        format!("{},{},{}", c.mor_name(self.b), c.mor_name(self.f), c.mor_name(self.a))
    }

    pub fn parse(c: &FinCategory, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [b, f, a] = parts[..] else {
            return Err(Error::MalformedArrow(s.to_string()));
        };
        Ok(Self::new(c.lookup_mor(b)?, c.lookup_mor(f)?, c.lookup_mor(a)?))
    }

    pub fn display<'a>(&'a self, c: &'a FinCategory) -> impl fmt::Display + 'a {
        struct D<'a>(&'a ThreeArrow, &'a FinCategory);
        impl fmt::Display for D<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "({})", self.0.render(self.1))
            }
        }
        D(self, c)
    }
}

/// Shape check: `b, a ∈ D`, `src f = src b`, `tgt f = tgt a`.
pub fn is_three_arrow(dd: &DenominatorData, t: &ThreeArrow) -> bool {
    let c = &dd.base;
    dd.is_den(t.b) && dd.is_den(t.a) && c.src(t.f) == c.src(t.b) && c.tgt(t.f) == c.tgt(t.a)
}

pub fn check_three_arrow(dd: &DenominatorData, t: &ThreeArrow) -> Result<()> {
    let c = &dd.base;
    for m in [t.b, t.a] {
        if !dd.is_den(m) {
            return Err(Error::NotADenominator(c.mor_name(m).to_string()));
        }
    }
    if c.src(t.f) != c.src(t.b) || c.tgt(t.f) != c.tgt(t.a) {
        return Err(Error::Precondition(format!(
            "{} does not have the shape of a 3-arrow",
            t.display(c)
        )));
    }
    Ok(())
}

/// `(p, f, i)` with `p ∈ T`, `i ∈ S`.
pub fn is_normal(dd: &DenominatorData, t: &ThreeArrow) -> bool {
    is_three_arrow(dd, t) && dd.is_t(t.b) && dd.is_s(t.a)
}

/// All 3-arrows, ordered by `(b, f, a)` index.
pub fn enumerate_three_arrows(dd: &DenominatorData) -> Vec<ThreeArrow> {
    let c = &dd.base;
    let mut out = Vec::new();
    for b in c.morphisms().filter(|&b| dd.is_den(b)) {
        for f in c.out_of(c.src(b)) {
            for a in c.into(c.tgt(f)).filter(|&a| dd.is_den(a)) {
                out.push(ThreeArrow::new(b, f, a));
            }
        }
    }
    out
}

/// Which generating family of fraction equality to emit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorVariant {
    /// `(b,f,a) ~ (b, fc, ac)` for `ac ∈ D` and `(b,f,a) ~ (cb, cf, a)` for `cb ∈ D`.
    TwoSided,
    /// `(b,f,a) ~ (b̃,f̃,ã)` whenever `b = c'b̃`, `fc = c'f̃`, `ac = ã`.
    OneStep,
}

/// Generator pairs of fraction equality. The connecting morphisms are
/// checked to be denominators, as semi-saturatedness forces.
pub fn fraction_generators(dd: &DenominatorData, variant: GeneratorVariant) -> Result<Vec<(ThreeArrow, ThreeArrow)>> {
    let c = &dd.base;
    let arrows = enumerate_three_arrows(dd);
    let mut out = Vec::new();
    let not_den = |m: Mor| {
        Error::Internal(format!(
            "connecting morphism {} of a generator is not a denominator",
            c.mor_name(m)
        ))
    };
    match variant {
        GeneratorVariant::TwoSided => {
            for &t in &arrows {
                for k in c.out_of(c.tgt(t.a)) {
                    let ak = c.then(t.a, k);
                    if dd.is_den(ak) {
                        if !dd.is_den(k) {
                            return Err(not_den(k));
                        }
                        out.push((t, ThreeArrow::new(t.b, c.then(t.f, k), ak)));
                    }
                }
                for k in c.into(c.src(t.b)) {
                    let kb = c.then(k, t.b);
                    if dd.is_den(kb) {
                        if !dd.is_den(k) {
                            return Err(not_den(k));
                        }
                        out.push((t, ThreeArrow::new(kb, c.then(k, t.f), t.a)));
                    }
                }
            }
        }
        GeneratorVariant::OneStep => {
            let by_ends = index_by_endpoints(c, &arrows);
            for &t in &arrows {
                let key = (t.source(c), t.target(c));
                for &u in &by_ends[&key] {
                    for &k1 in c.hom(c.src(t.b), c.src(u.b)) {
                        if c.then(k1, u.b) != t.b {
                            continue;
                        }
                        for &k in c.hom(c.tgt(t.a), c.tgt(u.a)) {
                            if c.then(t.a, k) == u.a && c.then(t.f, k) == c.then(k1, u.f) {
                                for m in [k, k1] {
                                    if !dd.is_den(m) {
                                        return Err(not_den(m));
                                    }
                                }
                                out.push((t, u));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

pub(crate) fn index_by_endpoints(c: &FinCategory, arrows: &[ThreeArrow]) -> HashMap<(Obj, Obj), Vec<ThreeArrow>> {
    let mut map: HashMap<(Obj, Obj), Vec<ThreeArrow>> = HashMap::new();
    for x in c.objects() {
        for y in c.objects() {
            map.insert((x, y), Vec::new());
        }
    }
    for &t in arrows {
        map.get_mut(&(t.source(c), t.target(c))).expect("all keys").push(t);
    }
    map
}

/// The fraction-equality classes of all 3-arrows of an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FractionPartition {
    arrows: Vec<ThreeArrow>,
    index: HashMap<ThreeArrow, usize>,
    labels: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl FractionPartition {
    /// Closes `generators` over `arrows`; fails if a generator relates
    /// non-parallel 3-arrows or leaves the enumerated set.
    pub fn from_generators(c: &FinCategory, arrows: Vec<ThreeArrow>, generators: &[(ThreeArrow, ThreeArrow)]) -> Result<Self> {
        let index: HashMap<ThreeArrow, usize> = arrows.iter().enumerate().map(|(i, &t)| (t, i)).collect();
        let mut uf = UnionFind::new(arrows.len());
        for (s, t) in generators {
            let (Some(&i), Some(&j)) = (index.get(s), index.get(t)) else {
                return Err(Error::Internal(format!(
                    "generator {} ~ {} leaves the 3-arrow graph",
                    s.display(c),
                    t.display(c)
                )));
            };
            if !s.is_parallel(t, c) {
                return Err(Error::NotParallel { a: i, b: j });
            }
            uf.union(i, j);
        }
        let labels = uf.labels();
        let count = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut members = vec![Vec::new(); count];
        for (i, &l) in labels.iter().enumerate() {
            members[l].push(i);
        }
        Ok(Self {
            arrows,
            index,
            labels,
            members,
        })
    }

    pub fn arrows(&self) -> &[ThreeArrow] {
        &self.arrows
    }

    pub fn num_classes(&self) -> usize {
        self.members.len()
    }

    pub fn position(&self, t: &ThreeArrow) -> Option<usize> {
        self.index.get(t).copied()
    }

    pub fn class_of(&self, t: &ThreeArrow) -> Option<usize> {
        self.position(t).map(|i| self.labels[i])
    }

    pub fn try_class_of(&self, c: &FinCategory, t: &ThreeArrow) -> Result<usize> {
        self.class_of(t)
            .ok_or_else(|| Error::Precondition(format!("{} is not a 3-arrow of this instance", t.display(c))))
    }

    pub fn same_class(&self, s: &ThreeArrow, t: &ThreeArrow) -> bool {
        matches!((self.class_of(s), self.class_of(t)), (Some(a), Some(b)) if a == b)
    }

    pub fn members(&self, class: usize) -> impl Iterator<Item = ThreeArrow> + '_ {
        self.members[class].iter().map(|&i| self.arrows[i])
    }

    /// The index-smallest member.
    pub fn representative(&self, class: usize) -> ThreeArrow {
        self.arrows[self.members[class][0]]
    }

    /// Position of the representative in the enumeration; class ids are
    /// derived from it.
    pub fn representative_position(&self, class: usize) -> usize {
        self.members[class][0]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }
}

/// Fraction equality, closed from the two-sided generators.
pub fn fraction_equivalence(dd: &DenominatorData) -> Result<FractionPartition> {
    let gens = fraction_generators(dd, GeneratorVariant::TwoSided)?;
    FractionPartition::from_generators(&dd.base, enumerate_three_arrows(dd), &gens)
}

/// Whether the middle morphism is a denominator; constant on classes.
pub fn is_denominator_class(dd: &DenominatorData, t: &ThreeArrow) -> bool {
    dd.is_den(t.f)
}

/// A normal 3-arrow fraction-equal to `t`, replaying the normalisation
/// lemma with the cached witnesses.
pub fn normalise(uf: &UniFractionable, t: &ThreeArrow) -> Result<ThreeArrow> {
    let dd = uf.dd();
    let c = &dd.base;
    check_three_arrow(dd, t)?;
    let (i, p) = uf.factorise(t.b)?;
    let (f1, i1) = uf.pushout(i, t.f)?;
    let (j, q) = uf.factorise(c.then(t.a, i1))?;
    let (f2, q1) = uf.pullback(q, f1)?;
    Ok(ThreeArrow::new(c.then(q1, p), f2, j))
}

/// Which components two normal representatives must share.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CommonMode {
    /// Same source; share `p`.
    Source,
    /// Same target; share `i`.
    Target,
    /// Parallel; share both.
    Parallel,
}

/// Normal representatives of `t1`, `t2` sharing the components demanded by
/// `mode`.
pub fn common_denominator(
    uf: &UniFractionable,
    t1: &ThreeArrow,
    t2: &ThreeArrow,
    mode: CommonMode,
) -> Result<(ThreeArrow, ThreeArrow)> {
    let c = uf.base();
    let need_source = matches!(mode, CommonMode::Source | CommonMode::Parallel);
    let need_target = matches!(mode, CommonMode::Target | CommonMode::Parallel);
    if (need_source && t1.source(c) != t2.source(c)) || (need_target && t1.target(c) != t2.target(c)) {
        return Err(Error::Precondition(format!(
            "{} and {} do not have matching endpoints",
            t1.display(c),
            t2.display(c)
        )));
    }
    let (mut n1, mut n2) = (normalise(uf, t1)?, normalise(uf, t2)?);
    if need_source {
        (n1, n2) = share_source(uf, n1, n2)?;
    }
    if need_target {
        (n1, n2) = share_target(uf, n1, n2)?;
    }
    Ok((n1, n2))
}

fn share_source(uf: &UniFractionable, n1: ThreeArrow, n2: ThreeArrow) -> Result<(ThreeArrow, ThreeArrow)> {
    if n1.b == n2.b {
        return Ok((n1, n2));
    }
    let c = uf.base();
    // p2' p1 = p1' p2 with p1' ∈ T.
    let (p2_, p1_) = uf.pullback(n1.b, n2.b)?;
    let p = c.then(p1_, n2.b);
    Ok((
        ThreeArrow::new(p, c.then(p2_, n1.f), n1.a),
        ThreeArrow::new(p, c.then(p1_, n2.f), n2.a),
    ))
}

fn share_target(uf: &UniFractionable, n1: ThreeArrow, n2: ThreeArrow) -> Result<(ThreeArrow, ThreeArrow)> {
    if n1.a == n2.a {
        return Ok((n1, n2));
    }
    let c = uf.base();
    // i1 i2' = i2 i1' with i1' ∈ S.
    let (i2_, i1_) = uf.pushout(n1.a, n2.a)?;
    let i = c.then(n2.a, i1_);
    Ok((
        ThreeArrow::new(n1.b, c.then(n1.f, i2_), i),
        ThreeArrow::new(n2.b, c.then(n2.f, i1_), i),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::make_named;

    #[test]
    fn parse_and_render() {
        let dd = make_named("CH3").unwrap().dd;
        let t = ThreeArrow::parse(&dd.base, "i_1, m_1_2 ,i_2").unwrap();
        assert_eq!(t.render(&dd.base), "i_1,m_1_2,i_2");
        assert!(matches!(ThreeArrow::parse(&dd.base, "i_1,m_1_2"), Err(Error::MalformedArrow(_))));
        assert!(matches!(ThreeArrow::parse(&dd.base, "i_1,zz,i_2"), Err(Error::UnknownId { .. })));
    }
}
