//! Decision procedures of the 3-arrow calculus.
//!
//! The lemmas behind these constructions are existence statements. In a finite
//! category an endpoint-pruned exhaustive search is complete, so every
//! construction here searches in dense index order and returns the first hit.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::category::{FinCategory, Mor};
use crate::denominators::{factorisations, DenominatorData};
use crate::error::{Error, Result};
use crate::fraction::FractionCategory;
use crate::three_arrow::{check_three_arrow, enumerate_three_arrows, fraction_equivalence, is_normal, ThreeArrow};

type Equation = (&'static str, Vec<Mor>, Vec<Mor>);

fn path(c: &FinCategory, ms: &[Mor]) -> Option<Mor> {
    let (&first, rest) = ms.split_first()?;
    rest.iter().try_fold(first, |acc, &m| c.comp(acc, m))
}

fn holds(c: &FinCategory, lhs: &[Mor], rhs: &[Mor]) -> bool {
    matches!((path(c, lhs), path(c, rhs)), (Some(l), Some(r)) if l == r)
}

fn violations(c: &FinCategory, members: &[(String, bool)], equations: &[Equation]) -> Vec<String> {
    let mut out: Vec<String> = members.iter().filter(|(_, ok)| !ok).map(|(l, _)| l.clone()).collect();
    for (label, lhs, rhs) in equations {
        if !holds(c, lhs, rhs) {
            out.push(format!("equation {label}"));
        }
    }
    out
}

fn row_members(dd: &DenominatorData, label: &str, t: &ThreeArrow) -> [(String, bool); 2] {
    [
        (format!("{label}: b in D"), dd.is_den(t.b)),
        (format!("{label}: a in D"), dd.is_den(t.a)),
    ]
}

fn normal_members(dd: &DenominatorData, label: &str, t: &ThreeArrow) -> [(String, bool); 2] {
    [
        (format!("{label}: top in T"), dd.is_t(t.b)),
        (format!("{label}: bottom in S"), dd.is_s(t.a)),
    ]
}

fn render_grid(c: &FinCategory, rows: &[ThreeArrow], columns: &[(&str, ThreeArrow)]) -> String {
    let mut out = String::new();
    for (k, r) in rows.iter().enumerate() {
        let _ = writeln!(out, "row{} {} {} {}", k + 1, c.mor_name(r.b), c.mor_name(r.f), c.mor_name(r.a));
    }
    for (label, t) in columns {
        let _ = writeln!(out, "{label} {} {} {}", c.mor_name(t.b), c.mor_name(t.f), c.mor_name(t.a));
    }
    out
}

/// Components of a factorisation square: `d = i p`, `e = j q`, `f j = i h`, `p g = h q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorisationSquare {
    pub i: Mor,
    pub p: Mor,
    pub j: Mor,
    pub q: Mor,
    pub h: Mor,
}

impl FactorisationSquare {
    pub fn revalidate(&self, dd: &DenominatorData, d: Mor, e: Mor, f: Mor, g: Mor) -> bool {
        let c = &dd.base;
        dd.is_s(self.i)
            && dd.is_t(self.p)
            && dd.is_s(self.j)
            && dd.is_t(self.q)
            && holds(c, &[d], &[self.i, self.p])
            && holds(c, &[e], &[self.j, self.q])
            && holds(c, &[f, self.j], &[self.i, self.h])
            && holds(c, &[self.p, g], &[self.h, self.q])
    }
}

/// Which side of a factorisation square is fixed in advance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Given {
    None,
    Left { i: Mor, p: Mor },
    Right { j: Mor, q: Mor },
}

fn check_square_input(dd: &DenominatorData, d: Mor, e: Mor, f: Mor, g: Mor) -> Result<()> {
    let c = &dd.base;
    for (label, m) in [("d", d), ("e", e)] {
        if !dd.is_den(m) {
            return Err(Error::Precondition(format!("{label} = `{}` is not a denominator", c.mor_name(m))));
        }
    }
    if !holds(c, &[f, e], &[d, g]) {
        return Err(Error::Precondition("square f e = d g does not commute".into()));
    }
    Ok(())
}

fn check_given(dd: &DenominatorData, label: &str, x: Mor, s: Mor, t: Mor) -> Result<()> {
    if dd.is_s(s) && dd.is_t(t) && holds(&dd.base, &[x], &[s, t]) {
        Ok(())
    } else {
        Err(Error::Precondition(format!("supplied factorisation of {label} is not an (S, T) factorisation")))
    }
}

/// Finds `(i, p, j, q, h)` for a commutative square `f e = d g` of denominators `d`, `e`.
pub fn factorisation_square(dd: &DenominatorData, d: Mor, e: Mor, f: Mor, g: Mor, given: Given) -> Result<FactorisationSquare> {
    check_square_input(dd, d, e, f, g)?;
    let c = &dd.base;
    let lefts = match given {
        Given::Left { i, p } => {
            check_given(dd, "d", d, i, p)?;
            vec![(i, p)]
        }
        _ => factorisations(dd, d),
    };
    let rights = match given {
        Given::Right { j, q } => {
            check_given(dd, "e", e, j, q)?;
            vec![(j, q)]
        }
        _ => factorisations(dd, e),
    };
    for &(i, p) in &lefts {
        for &(j, q) in &rights {
            for &h in c.hom(c.tgt(i), c.tgt(j)) {
                if holds(c, &[f, j], &[i, h]) && holds(c, &[p, g], &[h, q]) {
                    return Ok(FactorisationSquare { i, p, j, q, h });
                }
            }
        }
    }
    Err(Error::Internal(format!(
        "no factorisation square for d = `{}`, e = `{}`",
        c.mor_name(d),
        c.mor_name(e)
    )))
}

/// Which factorisation the full lemma refines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Refinement {
    /// Keeps `(i, p)`; replaces `(j, q)` by `(j k, q~)` with `q = k q~`.
    S,
    /// Keeps `(j, q)`; replaces `(i, p)` by `(i~, r p)` with `i = i~ r`.
    T,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RefinedSquare {
    pub square: FactorisationSquare,
    /// `k` for [`Refinement::S`], `r` for [`Refinement::T`].
    pub link: Mor,
}

/// Full factorisation lemma: both factorisations are given and one is refined.
#[allow(clippy::too_many_arguments)]
pub fn refined_factorisation_square(
    dd: &DenominatorData,
    d: Mor,
    e: Mor,
    f: Mor,
    g: Mor,
    (i, p): (Mor, Mor),
    (j, q): (Mor, Mor),
    variant: Refinement,
) -> Result<RefinedSquare> {
    check_square_input(dd, d, e, f, g)?;
    check_given(dd, "d", d, i, p)?;
    check_given(dd, "e", e, j, q)?;
    let c = &dd.base;
    match variant {
        Refinement::S => {
            for k in c.out_of(c.tgt(j)).filter(|&k| dd.is_s(k)) {
                let Some(jt) = c.comp(j, k).filter(|&m| dd.is_s(m)) else { continue };
                for &qt in c.hom(c.tgt(k), c.tgt(e)) {
                    if !dd.is_t(qt) || c.comp(k, qt) != Some(q) {
                        continue;
                    }
                    for &h in c.hom(c.tgt(i), c.tgt(k)) {
                        if holds(c, &[f, jt], &[i, h]) && holds(c, &[p, g], &[h, qt]) {
                            let square = FactorisationSquare { i, p, j: jt, q: qt, h };
                            return Ok(RefinedSquare { square, link: k });
                        }
                    }
                }
            }
        }
        Refinement::T => {
            for r in c.into(c.tgt(i)).filter(|&r| dd.is_t(r)) {
                let Some(pt) = c.comp(r, p).filter(|&m| dd.is_t(m)) else { continue };
                for &it in c.hom(c.src(d), c.src(r)) {
                    if !dd.is_s(it) || c.comp(it, r) != Some(i) {
                        continue;
                    }
                    for &h in c.hom(c.src(r), c.tgt(j)) {
                        if holds(c, &[f, j], &[it, h]) && holds(c, &[pt, g], &[h, q]) {
                            let square = FactorisationSquare { i: it, p: pt, j, q, h };
                            return Ok(RefinedSquare { square, link: r });
                        }
                    }
                }
            }
        }
    }
    Err(Error::Internal("no refined factorisation square".into()))
}

/// Outcome of comparing the 3×3 decision against the union-find oracle on
/// every ordered parallel pair.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SweepReport {
    pub pairs: usize,
    pub equal_pairs: usize,
    /// Pairs where the two decisions differ, or a witness fails to revalidate.
    pub divergences: Vec<(ThreeArrow, ThreeArrow)>,
}

pub fn theorem_sweep(dd: &DenominatorData) -> Result<SweepReport> {
    let c = &dd.base;
    let part = fraction_equivalence(dd)?;
    let arrows = enumerate_three_arrows(dd);
    let mut report = SweepReport::default();
    for t1 in &arrows {
        for t2 in arrows.iter().filter(|t| t.is_parallel(t1, c)) {
            let out = equal_by_3x3(dd, t1, t2)?;
            report.pairs += 1;
            report.equal_pairs += usize::from(out.equal);
            let witness_ok = out.witness.is_none_or(|w| w.revalidate(dd));
            if out.equal != part.same_class(t1, t2) || !witness_ok {
                report.divergences.push((*t1, *t2));
            }
        }
    }
    Ok(report)
}

/// A 4×4 grid proving two parallel 3-arrows equal.
///
/// `rows` are the outer rows with the two middle rows between them;
/// `columns` are the normal verticals `(p1, d1, i1)` and `(p2, d2, i2)`.
/// The outer columns are identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThreeByThreeWitness {
    pub rows: [ThreeArrow; 4],
    pub columns: [ThreeArrow; 2],
}

impl ThreeByThreeWitness {
    fn equations(&self) -> Vec<Equation> {
        let [r0, r1, r2, r3] = self.rows;
        let [c0, c1] = self.columns;
        vec![
            ("b~1 = p1 b1", vec![r1.b], vec![c0.b, r0.b]),
            ("f~1 p2 = p1 f1", vec![r1.f, c1.b], vec![c0.b, r0.f]),
            ("a~1 p2 = a1", vec![r1.a, c1.b], vec![r0.a]),
            ("b~1 = d1 b~2", vec![r1.b], vec![c0.f, r2.b]),
            ("f~1 d2 = d1 f~2", vec![r1.f, c1.f], vec![c0.f, r2.f]),
            ("a~1 d2 = a~2", vec![r1.a, c1.f], vec![r2.a]),
            ("b2 = i1 b~2", vec![r3.b], vec![c0.a, r2.b]),
            ("f2 i2 = i1 f~2", vec![r3.f, c1.a], vec![c0.a, r2.f]),
            ("a2 i2 = a~2", vec![r3.a, c1.a], vec![r2.a]),
        ]
    }

    /// Every failed membership or equation, by name.
    pub fn violations(&self, dd: &DenominatorData) -> Vec<String> {
        let mut members = Vec::new();
        for (k, r) in self.rows.iter().enumerate() {
            members.extend(row_members(dd, ["row1", "row2", "row3", "row4"][k], r));
        }
        for (k, col) in self.columns.iter().enumerate() {
            let label = ["col2", "col3"][k];
            members.extend(normal_members(dd, label, col));
            members.push((format!("{label}: middle in D"), dd.is_den(col.f)));
        }
        violations(&dd.base, &members, &self.equations())
    }

    pub fn revalidate(&self, dd: &DenominatorData) -> bool {
        self.violations(dd).is_empty()
    }

    /// Whether both middle rows are normal.
    pub fn has_normal_middle(&self, dd: &DenominatorData) -> bool {
        is_normal(dd, &self.rows[1]) && is_normal(dd, &self.rows[2])
    }

    /// Row-major morphism ids.
    pub fn render(&self, c: &FinCategory) -> String {
        render_grid(c, &self.rows, &[("col2", self.columns[0]), ("col3", self.columns[1])])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EqualityOutcome {
    pub equal: bool,
    pub witness: Option<ThreeByThreeWitness>,
    /// Present when both inputs are normal and equal.
    pub normal_witness: Option<ThreeByThreeWitness>,
}

fn search_3x3(dd: &DenominatorData, t1: &ThreeArrow, t2: &ThreeArrow, normal: bool) -> Option<ThreeByThreeWitness> {
    let c = &dd.base;
    let x = t1.source(c);
    let y = t1.target(c);
    let row_b = |m: Mor| dd.is_den(m) && (!normal || dd.is_t(m));
    let row_a = |m: Mor| dd.is_den(m) && (!normal || dd.is_s(m));

    // Left column: (p1, d1, i1) with b~1 = p1 b1 and a b~2 closing both squares.
    let mut left = Vec::new();
    for p1 in c.into(c.src(t1.b)).filter(|&m| dd.is_t(m)) {
        let Some(bt1) = c.comp(p1, t1.b).filter(|&m| row_b(m)) else { continue };
        for i1 in c.out_of(c.src(t2.b)).filter(|&m| dd.is_s(m)) {
            for &d1 in c.hom(c.src(p1), c.tgt(i1)).iter().filter(|&&m| dd.is_den(m)) {
                let bt2 = c.hom(c.tgt(i1), x).iter().copied().find(|&m| {
                    row_b(m) && c.comp(i1, m) == Some(t2.b) && c.comp(d1, m) == Some(bt1)
                });
                if let Some(bt2) = bt2 {
                    left.push((p1, d1, i1, bt1, bt2));
                }
            }
        }
    }
    if left.is_empty() {
        return None;
    }

    let mut right = Vec::new();
    let mut seen = HashSet::new();
    for p2 in c.into(c.tgt(t1.a)).filter(|&m| dd.is_t(m)) {
        for &at1 in c.hom(y, c.src(p2)) {
            if !row_a(at1) || c.comp(at1, p2) != Some(t1.a) {
                continue;
            }
            for i2 in c.out_of(c.tgt(t2.a)).filter(|&m| dd.is_s(m)) {
                let Some(at2) = c.comp(t2.a, i2).filter(|&m| row_a(m)) else { continue };
                for &d2 in c.hom(c.src(p2), c.tgt(i2)) {
                    if dd.is_den(d2) && c.comp(at1, d2) == Some(at2) && seen.insert((p2, d2, i2)) {
                        right.push((p2, d2, i2, at1, at2));
                    }
                }
            }
        }
    }

    for &(p1, d1, i1, bt1, bt2) in &left {
        let top = c.comp(p1, t1.f);
        for &(p2, d2, i2, at1, at2) in &right {
            let bottom = c.comp(t2.f, i2);
            for &ft1 in c.hom(c.src(p1), c.src(p2)) {
                if c.comp(ft1, p2) != top {
                    continue;
                }
                let across = c.comp(ft1, d2);
                for &ft2 in c.hom(c.tgt(i1), c.tgt(i2)) {
                    if c.comp(i1, ft2) == bottom && c.comp(d1, ft2) == across {
                        return Some(ThreeByThreeWitness {
                            rows: [*t1, ThreeArrow::new(bt1, ft1, at1), ThreeArrow::new(bt2, ft2, at2), *t2],
                            columns: [ThreeArrow::new(p1, d1, i1), ThreeArrow::new(p2, d2, i2)],
                        });
                    }
                }
            }
        }
    }
    None
}

/// Decides fraction equality of two parallel 3-arrows by 3×3 witness search.
pub fn equal_by_3x3(dd: &DenominatorData, t1: &ThreeArrow, t2: &ThreeArrow) -> Result<EqualityOutcome> {
    check_three_arrow(dd, t1)?;
    check_three_arrow(dd, t2)?;
    let c = &dd.base;
    if !t1.is_parallel(t2, c) {
        return Err(Error::Precondition(format!(
            "3-arrows `{}` and `{}` are not parallel",
            t1.render(c),
            t2.render(c)
        )));
    }
    let witness = search_3x3(dd, t1, t2, false);
    let normal_witness = match witness {
        Some(_) if is_normal(dd, t1) && is_normal(dd, t2) => search_3x3(dd, t1, t2, true),
        _ => None,
    };
    Ok(EqualityOutcome { equal: witness.is_some(), witness, normal_witness })
}

/// A 4×4 grid proving `[row1][col4] = [col1][row4]`.
///
/// `columns[0]` and `columns[3]` are the given normal outer verticals;
/// the inner two are found.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SquareWitness {
    pub rows: [ThreeArrow; 4],
    pub columns: [ThreeArrow; 4],
}

impl SquareWitness {
    fn equations(&self) -> Vec<Equation> {
        let [r0, r1, r2, r3] = self.rows;
        let [c0, c1, c2, c3] = self.columns;
        vec![
            ("b~1 p1 = p~1 b1", vec![r1.b, c0.b], vec![c1.b, r0.b]),
            ("f~1 p~2 = p~1 f1", vec![r1.f, c2.b], vec![c1.b, r0.f]),
            ("a~1 p~2 = p2 a1", vec![r1.a, c2.b], vec![c3.b, r0.a]),
            ("b~1 g1 = g~1 b~2", vec![r1.b, c0.f], vec![c1.f, r2.b]),
            ("f~1 g~2 = g~1 f~2", vec![r1.f, c2.f], vec![c1.f, r2.f]),
            ("a~1 g~2 = g2 a~2", vec![r1.a, c2.f], vec![c3.f, r2.a]),
            ("b2 i1 = i~1 b~2", vec![r3.b, c0.a], vec![c1.a, r2.b]),
            ("f2 i~2 = i~1 f~2", vec![r3.f, c2.a], vec![c1.a, r2.f]),
            ("a2 i~2 = i2 a~2", vec![r3.a, c2.a], vec![c3.a, r2.a]),
        ]
    }

    pub fn violations(&self, dd: &DenominatorData) -> Vec<String> {
        let mut members = Vec::new();
        for (k, r) in self.rows.iter().enumerate() {
            members.extend(row_members(dd, ["row1", "row2", "row3", "row4"][k], r));
        }
        for (k, col) in self.columns.iter().enumerate() {
            members.extend(normal_members(dd, ["col1", "col2", "col3", "col4"][k], col));
        }
        violations(&dd.base, &members, &self.equations())
    }

    pub fn revalidate(&self, dd: &DenominatorData) -> bool {
        self.violations(dd).is_empty()
    }

    pub fn render(&self, c: &FinCategory) -> String {
        let cols = self.columns;
        render_grid(c, &self.rows, &[("col1", cols[0]), ("col2", cols[1]), ("col3", cols[2]), ("col4", cols[3])])
    }
}

fn search_square(
    dd: &DenominatorData,
    t1: &ThreeArrow,
    t2: &ThreeArrow,
    outer_left: &ThreeArrow,
    outer_right: &ThreeArrow,
) -> Option<SquareWitness> {
    let c = &dd.base;
    let (p1, g1, i1) = (outer_left.b, outer_left.f, outer_left.a);
    let (p2, g2, i2) = (outer_right.b, outer_right.f, outer_right.a);

    // Only (p~1, g~1, i~1) enters the join, so one (b~1, b~2) per key suffices.
    let mut left = Vec::new();
    let mut seen = HashSet::new();
    for pt1 in c.into(c.src(t1.b)).filter(|&m| dd.is_t(m)) {
        let top = c.comp(pt1, t1.b);
        for &bt1 in c.hom(c.src(pt1), c.src(p1)) {
            if !dd.is_den(bt1) || c.comp(bt1, p1) != top {
                continue;
            }
            for it1 in c.out_of(c.src(t2.b)).filter(|&m| dd.is_s(m)) {
                let bottom = c.comp(t2.b, i1);
                for &bt2 in c.hom(c.tgt(it1), c.tgt(g1)) {
                    if !dd.is_den(bt2) || c.comp(it1, bt2) != bottom {
                        continue;
                    }
                    let across = c.comp(bt1, g1);
                    for &gt1 in c.hom(c.src(pt1), c.tgt(it1)) {
                        if c.comp(gt1, bt2) == across && seen.insert((pt1, gt1, it1)) {
                            left.push((pt1, gt1, it1, bt1, bt2));
                        }
                    }
                }
            }
        }
    }
    if left.is_empty() {
        return None;
    }

    let mut right = Vec::new();
    let mut seen = HashSet::new();
    for pt2 in c.into(c.tgt(t1.f)).filter(|&m| dd.is_t(m)) {
        let top = c.comp(p2, t1.a);
        for &at1 in c.hom(c.src(p2), c.src(pt2)) {
            if !dd.is_den(at1) || c.comp(at1, pt2) != top {
                continue;
            }
            for it2 in c.out_of(c.tgt(t2.a)).filter(|&m| dd.is_s(m)) {
                let bottom = c.comp(t2.a, it2);
                for &at2 in c.hom(c.tgt(g2), c.tgt(it2)) {
                    if !dd.is_den(at2) || c.comp(i2, at2) != bottom {
                        continue;
                    }
                    let across = c.comp(g2, at2);
                    for &gt2 in c.hom(c.src(pt2), c.tgt(it2)) {
                        if c.comp(at1, gt2) == across && seen.insert((pt2, gt2, it2)) {
                            right.push((pt2, gt2, it2, at1, at2));
                        }
                    }
                }
            }
        }
    }

    for &(pt1, gt1, it1, bt1, bt2) in &left {
        let top = c.comp(pt1, t1.f);
        for &(pt2, gt2, it2, at1, at2) in &right {
            let bottom = c.comp(t2.f, it2);
            for &ft1 in c.hom(c.src(pt1), c.src(pt2)) {
                if c.comp(ft1, pt2) != top {
                    continue;
                }
                let across = c.comp(ft1, gt2);
                for &ft2 in c.hom(c.tgt(it1), c.tgt(it2)) {
                    if c.comp(it1, ft2) == bottom && c.comp(gt1, ft2) == across {
                        return Some(SquareWitness {
                            rows: [*t1, ThreeArrow::new(bt1, ft1, at1), ThreeArrow::new(bt2, ft2, at2), *t2],
                            columns: [*outer_left, ThreeArrow::new(pt1, gt1, it1), ThreeArrow::new(pt2, gt2, it2), *outer_right],
                        });
                    }
                }
            }
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MixedOutcome {
    pub equal: bool,
    pub witness: Option<SquareWitness>,
}

/// Decides `[t1][normal2] = [normal1][t2]` by square search.
///
/// The answer is cross-checked against composing classes in `fc`; a
/// disagreement is reported as an internal error.
pub fn mixed_composite_equal(
    fc: &FractionCategory,
    t1: &ThreeArrow,
    normal2: &ThreeArrow,
    normal1: &ThreeArrow,
    t2: &ThreeArrow,
) -> Result<MixedOutcome> {
    let dd = fc.dd();
    let c = &dd.base;
    for t in [t1, normal2, normal1, t2] {
        check_three_arrow(dd, t)?;
    }
    for (label, t) in [("normal1", normal1), ("normal2", normal2)] {
        if !is_normal(dd, t) {
            return Err(Error::Precondition(format!("{label} `{}` is not normal", t.render(c))));
        }
    }
    let joints = [
        ("t1 and normal1 share a source", t1.source(c) == normal1.source(c)),
        ("t1 composes with normal2", t1.target(c) == normal2.source(c)),
        ("normal1 composes with t2", normal1.target(c) == t2.source(c)),
        ("normal2 and t2 share a target", normal2.target(c) == t2.target(c)),
    ];
    if let Some((label, _)) = joints.iter().find(|(_, ok)| !ok) {
        return Err(Error::Precondition(format!("composability: {label} fails")));
    }
    let witness = search_square(dd, t1, t2, normal1, normal2);
    let lhs = fc.compose_fractions(t1, normal2, true)?;
    let rhs = fc.compose_fractions(normal1, t2, true)?;
    if (lhs == rhs) != witness.is_some() {
        return Err(Error::Internal(format!(
            "square search ({}) disagrees with composite classes ({} vs {})",
            witness.is_some(),
            fc.class_name(lhs),
            fc.class_name(rhs)
        )));
    }
    Ok(MixedOutcome { equal: witness.is_some(), witness })
}

/// Hypothesis of the flipping lemma.
///
/// Rows from top to bottom are `top = (b1, f1, a1)`, `upper = (v1, h1, u1)`,
/// `lower = (v2, h2, u2)`, `bottom = (b2, f2, a2)`. `g2 = [g2'', g2', g2]` run
/// from `top` down to `upper`, `g1 = [g1, g1', g1'']` from `lower` down to
/// `bottom`; `p1, d, e, i2` run from `lower` up to `upper`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlipHypothesis {
    pub top: ThreeArrow,
    pub upper: ThreeArrow,
    pub lower: ThreeArrow,
    pub bottom: ThreeArrow,
    pub p1: Mor,
    pub d: Mor,
    pub e: Mor,
    pub i2: Mor,
    pub g1: [Mor; 3],
    pub g2: [Mor; 3],
}

impl FlipHypothesis {
    fn equations(&self) -> Vec<Equation> {
        let (t, u, l, b) = (self.top, self.upper, self.lower, self.bottom);
        let [g1, g1p, g1pp] = self.g1;
        let [g2pp, g2p, g2] = self.g2;
        vec![
            ("b1 = g2'' v1", vec![t.b], vec![g2pp, u.b]),
            ("f1 g2' = g2'' h1", vec![t.f, g2p], vec![g2pp, u.f]),
            ("a1 g2' = g2 u1", vec![t.a, g2p], vec![g2, u.a]),
            ("v2 p1 = d v1", vec![l.b, self.p1], vec![self.d, u.b]),
            ("h2 e = d h1", vec![l.f, self.e], vec![self.d, u.f]),
            ("u2 e = i2 u1", vec![l.a, self.e], vec![self.i2, u.a]),
            ("v2 g1 = g1' b2", vec![l.b, g1], vec![g1p, b.b]),
            ("h2 g1'' = g1' f2", vec![l.f, g1pp], vec![g1p, b.f]),
            ("u2 g1'' = a2", vec![l.a, g1pp], vec![b.a]),
        ]
    }

    pub fn violations(&self, dd: &DenominatorData) -> Vec<String> {
        let mut members = Vec::new();
        for (label, r) in [("top", self.top), ("upper", self.upper), ("lower", self.lower), ("bottom", self.bottom)] {
            members.extend(row_members(dd, label, &r));
        }
        members.push(("p1 in T".into(), dd.is_t(self.p1)));
        members.push(("i2 in S".into(), dd.is_s(self.i2)));
        members.push(("d in D".into(), dd.is_den(self.d)));
        members.push(("e in D".into(), dd.is_den(self.e)));
        violations(&dd.base, &members, &self.equations())
    }
}

/// Flipping lemma: turns a hypothesis diagram into a [`SquareWitness`] with
/// outer columns `(p1, g1, 1)` and `(1, g2, i2)`.
pub fn flip(dd: &DenominatorData, hyp: &FlipHypothesis) -> Result<SquareWitness> {
    if let Some(v) = hyp.violations(dd).into_iter().next() {
        return Err(Error::Precondition(format!("flip hypothesis: {v}")));
    }
    let c = &dd.base;
    let left = ThreeArrow::new(hyp.p1, hyp.g1[0], c.identity(hyp.bottom.source(c)));
    let right = ThreeArrow::new(c.identity(hyp.top.target(c)), hyp.g2[2], hyp.i2);
    search_square(dd, &hyp.top, &hyp.bottom, &left, &right)
        .ok_or_else(|| Error::Internal("flip: no conclusion diagram found".into()))
}
