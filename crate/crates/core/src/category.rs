//! Finite categories, graphs, graph congruences and functors as explicit tables.
//!
//! Composition is written in diagrammatic order throughout: `comp(f, g)` is
//! "first `f`, then `g`" and is defined when `tgt(f) == src(g)`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::union_find::UnionFind;

/// Dense object index, in file order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Obj(pub u32);

/// Dense morphism index, in file order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Mor(pub u32);

impl Obj {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl Mor {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One violated law or malformed entry found by a validator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    MissingIdentity { object: String },
    IdentityEndpoints { object: String, morphism: String },
    MissingComposite { first: String, second: String },
    CompositeEndpoints { first: String, second: String, composite: String },
    NonComposableEntry { first: String, second: String, composite: String },
    LeftIdentity { morphism: String },
    RightIdentity { morphism: String },
    Associativity { f: String, g: String, h: String },
    FunctorSize { what: &'static str, expected: usize, found: usize },
    FunctorEndpoints { morphism: String },
    FunctorIdentity { object: String },
    FunctorComposition { first: String, second: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        use Violation::*;
        match self {
            MissingIdentity { object } => write!(out, "missing identity for object {object}"),
            IdentityEndpoints { object, morphism } => {
                write!(out, "identity {morphism} of {object} is not an endomorphism of {object}")
            }
            MissingComposite { first, second } => {
                write!(out, "missing composite ({first}, {second})")
            }
            CompositeEndpoints { first, second, composite } => write!(
                out,
                "composite ({first}, {second}) = {composite} has wrong endpoints"
            ),
            NonComposableEntry { first, second, composite } => write!(
                out,
                "composite ({first}, {second}) = {composite} given for a non-composable pair"
            ),
            LeftIdentity { morphism } => write!(out, "left identity law fails for {morphism}"),
            RightIdentity { morphism } => write!(out, "right identity law fails for {morphism}"),
            Associativity { f, g, h } => write!(out, "associativity fails on ({f}, {g}, {h})"),
            FunctorSize { what, expected, found } => {
                write!(out, "{what} map has {found} entries, expected {expected}")
            }
            FunctorEndpoints { morphism } => {
                write!(out, "image of {morphism} has wrong endpoints")
            }
            FunctorIdentity { object } => write!(out, "identity of {object} not preserved"),
            FunctorComposition { first, second } => {
                write!(out, "composite ({first}, {second}) not preserved")
            }
        }
    }
}

/// Outcome of a validator: empty iff every checked law holds.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return writeln!(out, "valid: true");
        }
        writeln!(out, "valid: false")?;
        for v in &self.violations {
            writeln!(out, "violation: {v}")?;
        }
        Ok(())
    }
}

/// A finite category stored as dense tables.
///
/// Instances may be malformed (missing identities or composites); run
/// [`FinCategory::validate`] before relying on the category laws.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<String>,
    src: Vec<Obj>,
    tgt: Vec<Obj>,
    identity: Vec<Option<Mor>>,
    comp: Vec<Option<Mor>>,
    stray: Vec<(Mor, Mor, Mor)>,
    obj_index: HashMap<String, Obj>,
    mor_index: HashMap<String, Mor>,
    homs: Vec<Vec<Mor>>,
}

/// Incremental string-keyed constructor for [`FinCategory`].
#[derive(Debug, Default, Clone)]
pub struct CategoryBuilder {
    objects: Vec<String>,
    obj_index: HashMap<String, Obj>,
    morphisms: Vec<String>,
    mor_index: HashMap<String, Mor>,
    src: Vec<Obj>,
    tgt: Vec<Obj>,
    identities: Vec<(Obj, Mor)>,
    composites: Vec<(Mor, Mor, Mor)>,
}

impl CategoryBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn object(&mut self, id: impl Into<String>) -> Result<Obj> {
        let id = id.into();
        if self.obj_index.contains_key(&id) {
            return Err(Error::DuplicateId { kind: "object", id });
        }
        let o = Obj(self.objects.len() as u32);
        self.obj_index.insert(id.clone(), o);
        self.objects.push(id);
        Ok(o)
    }

    pub fn morphism(&mut self, id: impl Into<String>, src: &str, tgt: &str) -> Result<Mor> {
        let id = id.into();
        if self.mor_index.contains_key(&id) {
            return Err(Error::DuplicateId { kind: "morphism", id });
        }
        let s = self.obj(src)?;
        let t = self.obj(tgt)?;
        let m = Mor(self.morphisms.len() as u32);
        self.mor_index.insert(id.clone(), m);
        self.morphisms.push(id);
        self.src.push(s);
        self.tgt.push(t);
        Ok(m)
    }

    pub fn identity(&mut self, object: &str, morphism: &str) -> Result<()> {
        let o = self.obj(object)?;
        let m = self.mor(morphism)?;
        self.identities.push((o, m));
        Ok(())
    }

    pub fn composite(&mut self, first: &str, second: &str, composite: &str) -> Result<()> {
        let f = self.mor(first)?;
        let g = self.mor(second)?;
        let h = self.mor(composite)?;
        self.composites.push((f, g, h));
        Ok(())
    }

    fn obj(&self, id: &str) -> Result<Obj> {
        self.obj_index.get(id).copied().ok_or_else(|| Error::UnknownId {
            kind: "object",
            id: id.to_string(),
        })
    }

    fn mor(&self, id: &str) -> Result<Mor> {
        self.mor_index.get(id).copied().ok_or_else(|| Error::UnknownId {
            kind: "morphism",
            id: id.to_string(),
        })
    }

    /// Assembles the tables. Referential errors (unknown ids, duplicate or
    /// conflicting entries) fail here; law violations are left for
    /// [`FinCategory::validate`].
    pub fn build(self) -> Result<FinCategory> {
        let no = self.objects.len();
        let nm = self.morphisms.len();
        let mut identity = vec![None; no];
        for (o, m) in self.identities {
            if identity[o.index()].is_some() {
                return Err(Error::DuplicateId {
                    kind: "identity for object",
                    id: self.objects[o.index()].clone(),
                });
            }
            identity[o.index()] = Some(m);
        }
        let mut comp: Vec<Option<Mor>> = vec![None; nm * nm];
        let mut stray = Vec::new();
        for (f, g, h) in self.composites {
            if self.tgt[f.index()] != self.src[g.index()] {
                stray.push((f, g, h));
                continue;
            }
            let slot = &mut comp[f.index() * nm + g.index()];
            match *slot {
                Some(existing) if existing != h => {
                    return Err(Error::ConflictingComposite {
                        first: self.morphisms[f.index()].clone(),
                        second: self.morphisms[g.index()].clone(),
                        existing: self.morphisms[existing.index()].clone(),
                        new: self.morphisms[h.index()].clone(),
                    })
                }
                _ => *slot = Some(h),
            }
        }
        let mut homs = vec![Vec::new(); no * no];
        for m in 0..nm {
            homs[self.src[m].index() * no + self.tgt[m].index()].push(Mor(m as u32));
        }
        Ok(FinCategory {
            objects: self.objects,
            morphisms: self.morphisms,
            src: self.src,
            tgt: self.tgt,
            identity,
            comp,
            stray,
            obj_index: self.obj_index,
            mor_index: self.mor_index,
            homs,
        })
    }
}

impl FinCategory {
    /// Builds a category from string tables; see [`CategoryBuilder::build`].
    pub fn from_table<S: AsRef<str>>(
        objects: &[S],
        morphisms: &[(S, S, S)],
        identities: &[(S, S)],
        composition: &[(S, S, S)],
    ) -> Result<Self> {
        let mut b = CategoryBuilder::new();
        for o in objects {
            b.object(o.as_ref())?;
        }
        for (id, s, t) in morphisms {
            b.morphism(id.as_ref(), s.as_ref(), t.as_ref())?;
        }
        for (o, m) in identities {
            b.identity(o.as_ref(), m.as_ref())?;
        }
        for (f, g, h) in composition {
            b.composite(f.as_ref(), g.as_ref(), h.as_ref())?;
        }
        b.build()
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> impl Iterator<Item = Obj> + '_ {
        (0..self.objects.len() as u32).map(Obj)
    }

    pub fn morphisms(&self) -> impl Iterator<Item = Mor> + '_ {
        (0..self.morphisms.len() as u32).map(Mor)
    }

    pub fn obj_name(&self, o: Obj) -> &str {
        &self.objects[o.index()]
    }

    pub fn mor_name(&self, m: Mor) -> &str {
        &self.morphisms[m.index()]
    }

    pub fn obj_id(&self, name: &str) -> Option<Obj> {
        self.obj_index.get(name).copied()
    }

    pub fn mor_id(&self, name: &str) -> Option<Mor> {
        self.mor_index.get(name).copied()
    }

    pub fn lookup_obj(&self, name: &str) -> Result<Obj> {
        self.obj_id(name).ok_or_else(|| Error::UnknownId {
            kind: "object",
            id: name.to_string(),
        })
    }

    pub fn lookup_mor(&self, name: &str) -> Result<Mor> {
        self.mor_id(name).ok_or_else(|| Error::UnknownId {
            kind: "morphism",
            id: name.to_string(),
        })
    }

    pub fn src(&self, m: Mor) -> Obj {
        self.src[m.index()]
    }

    pub fn tgt(&self, m: Mor) -> Obj {
        self.tgt[m.index()]
    }

    pub fn try_identity(&self, o: Obj) -> Option<Mor> {
        self.identity[o.index()]
    }

    /// Identity of `o`. Panics on a category that failed validation.
    pub fn identity(&self, o: Obj) -> Mor {
        self.identity[o.index()].expect("identity present in a validated category")
    }

    pub fn is_identity(&self, m: Mor) -> bool {
        self.identity[self.src(m).index()] == Some(m)
    }

    /// Table lookup; `None` for non-composable or missing pairs.
    pub fn comp(&self, f: Mor, g: Mor) -> Option<Mor> {
        if self.tgt(f) != self.src(g) {
            return None;
        }
        self.comp[f.index() * self.morphisms.len() + g.index()]
    }

    /// `f` then `g`, with errors naming both endpoints.
    pub fn compose(&self, f: Mor, g: Mor) -> Result<Mor> {
        if self.tgt(f) != self.src(g) {
            return Err(Error::NotComposable {
                first: self.mor_name(f).to_string(),
                second: self.mor_name(g).to_string(),
                first_tgt: self.obj_name(self.tgt(f)).to_string(),
                second_src: self.obj_name(self.src(g)).to_string(),
            });
        }
        self.comp(f, g).ok_or_else(|| Error::MissingComposite {
            first: self.mor_name(f).to_string(),
            second: self.mor_name(g).to_string(),
        })
    }

    /// `f` then `g` in a validated category. Panics on non-composable input.
    pub fn then(&self, f: Mor, g: Mor) -> Mor {
        match self.comp(f, g) {
            Some(h) => h,
            None => panic!(
                "composite ({}, {}) undefined",
                self.mor_name(f),
                self.mor_name(g)
            ),
        }
    }

    /// Composite of a non-empty path.
    pub fn then_all(&self, path: &[Mor]) -> Mor {
        let (first, rest) = path.split_first().expect("non-empty path");
        rest.iter().fold(*first, |acc, &m| self.then(acc, m))
    }

    pub fn hom(&self, x: Obj, y: Obj) -> &[Mor] {
        &self.homs[x.index() * self.objects.len() + y.index()]
    }

    pub fn out_of(&self, x: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.morphisms().filter(move |&m| self.src(m) == x)
    }

    pub fn into(&self, y: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.morphisms().filter(move |&m| self.tgt(m) == y)
    }

    pub fn inverse(&self, m: Mor) -> Option<Mor> {
        let (x, y) = (self.src(m), self.tgt(m));
        let (ix, iy) = (self.try_identity(x)?, self.try_identity(y)?);
        self.hom(y, x)
            .iter()
            .copied()
            .find(|&n| self.comp(m, n) == Some(ix) && self.comp(n, m) == Some(iy))
    }

    pub fn is_iso(&self, m: Mor) -> bool {
        self.inverse(m).is_some()
    }

    /// Exhaustively checks totality, endpoints, identity laws and associativity.
    pub fn validate(&self) -> ValidationReport {
        let mut violations = Vec::new();
        let name = |m: Mor| self.mor_name(m).to_string();
        for o in self.objects() {
            match self.try_identity(o) {
                None => violations.push(Violation::MissingIdentity {
                    object: self.obj_name(o).to_string(),
                }),
                Some(id) if self.src(id) != o || self.tgt(id) != o => {
                    violations.push(Violation::IdentityEndpoints {
                        object: self.obj_name(o).to_string(),
                        morphism: name(id),
                    })
                }
                _ => {}
            }
        }
        for &(f, g, h) in &self.stray {
            violations.push(Violation::NonComposableEntry {
                first: name(f),
                second: name(g),
                composite: name(h),
            });
        }
        for f in self.morphisms() {
            for g in self.out_of(self.tgt(f)) {
                match self.comp(f, g) {
                    None => violations.push(Violation::MissingComposite {
                        first: name(f),
                        second: name(g),
                    }),
                    Some(h) if self.src(h) != self.src(f) || self.tgt(h) != self.tgt(g) => {
                        violations.push(Violation::CompositeEndpoints {
                            first: name(f),
                            second: name(g),
                            composite: name(h),
                        })
                    }
                    _ => {}
                }
            }
        }
        for f in self.morphisms() {
            if let Some(id) = self.try_identity(self.src(f)) {
                if self.src(id) == self.src(f) && self.comp(id, f).is_some_and(|h| h != f) {
                    violations.push(Violation::LeftIdentity { morphism: name(f) });
                }
            }
            if let Some(id) = self.try_identity(self.tgt(f)) {
                if self.tgt(id) == self.tgt(f) && self.comp(f, id).is_some_and(|h| h != f) {
                    violations.push(Violation::RightIdentity { morphism: name(f) });
                }
            }
        }
        for f in self.morphisms() {
            for g in self.out_of(self.tgt(f)) {
                let Some(fg) = self.comp(f, g) else { continue };
                for h in self.out_of(self.tgt(g)) {
                    let (Some(gh), Some(l)) = (self.comp(g, h), self.comp(fg, h)) else {
                        continue;
                    };
                    match self.comp(f, gh) {
                        Some(r) if r == l => {}
                        Some(_) => violations.push(Violation::Associativity {
                            f: name(f),
                            g: name(g),
                            h: name(h),
                        }),
                        None => {}
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    /// Composable pairs `(f, g)` with their composite, in index order.
    pub fn composition_entries(&self) -> Vec<(Mor, Mor, Mor)> {
        let mut out = Vec::new();
        for f in self.morphisms() {
            for g in self.out_of(self.tgt(f)) {
                if let Some(h) = self.comp(f, g) {
                    out.push((f, g, h));
                }
            }
        }
        out
    }

    /// The opposite category: same ids, reversed endpoints and composition.
    pub fn opposite(&self) -> FinCategory {
        let mut b = CategoryBuilder::new();
        for o in self.objects() {
            b.object(self.obj_name(o)).expect("fresh ids");
        }
        for m in self.morphisms() {
            b.morphism(
                self.mor_name(m),
                self.obj_name(self.tgt(m)),
                self.obj_name(self.src(m)),
            )
            .expect("known objects");
        }
        for o in self.objects() {
            if let Some(id) = self.try_identity(o) {
                b.identity(self.obj_name(o), self.mor_name(id)).expect("known ids");
            }
        }
        for (f, g, h) in self.composition_entries() {
            b.composite(self.mor_name(g), self.mor_name(f), self.mor_name(h))
                .expect("known ids");
        }
        b.build().expect("opposite of a well-formed table is well-formed")
    }

    /// The full subcategory on `objects` (kept in the given order) and its
    /// inclusion functor.
    pub fn full_subcategory(&self, objects: &[Obj]) -> (FinCategory, FunctorTable) {
        let keep: Vec<bool> = {
            let mut k = vec![false; self.num_objects()];
            for o in objects {
                k[o.index()] = true;
            }
            k
        };
        let mut b = CategoryBuilder::new();
        let mut obj_map = Vec::new();
        for &o in objects {
            b.object(self.obj_name(o)).expect("distinct objects");
            obj_map.push(o);
        }
        let mut mor_map = Vec::new();
        for m in self.morphisms() {
            if keep[self.src(m).index()] && keep[self.tgt(m).index()] {
                b.morphism(
                    self.mor_name(m),
                    self.obj_name(self.src(m)),
                    self.obj_name(self.tgt(m)),
                )
                .expect("known objects");
                mor_map.push(m);
            }
        }
        for &o in objects {
            if let Some(id) = self.try_identity(o) {
                b.identity(self.obj_name(o), self.mor_name(id)).expect("known ids");
            }
        }
        for (f, g, h) in self.composition_entries() {
            if keep[self.src(f).index()] && keep[self.tgt(f).index()] && keep[self.tgt(g).index()]
            {
                b.composite(self.mor_name(f), self.mor_name(g), self.mor_name(h))
                    .expect("known ids");
            }
        }
        (
            b.build().expect("restriction of a well-formed table"),
            FunctorTable { obj_map, mor_map },
        )
    }
}

/// A functor between two finite categories, given by its object and morphism maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctorTable {
    pub obj_map: Vec<Obj>,
    pub mor_map: Vec<Mor>,
}

impl FunctorTable {
    pub fn identity(c: &FinCategory) -> Self {
        Self {
            obj_map: c.objects().collect(),
            mor_map: c.morphisms().collect(),
        }
    }

    pub fn on_obj(&self, o: Obj) -> Obj {
        self.obj_map[o.index()]
    }

    pub fn on_mor(&self, m: Mor) -> Mor {
        self.mor_map[m.index()]
    }

    /// `self` then `other`.
    pub fn then(&self, other: &FunctorTable) -> FunctorTable {
        FunctorTable {
            obj_map: self.obj_map.iter().map(|&o| other.on_obj(o)).collect(),
            mor_map: self.mor_map.iter().map(|&m| other.on_mor(m)).collect(),
        }
    }

    /// Builds a functor from name pairs.
    pub fn from_names<S: AsRef<str>>(
        source: &FinCategory,
        target: &FinCategory,
        objects: &[(S, S)],
        morphisms: &[(S, S)],
    ) -> Result<Self> {
        let mut obj_map = vec![None; source.num_objects()];
        for (a, b) in objects {
            obj_map[source.lookup_obj(a.as_ref())?.index()] = Some(target.lookup_obj(b.as_ref())?);
        }
        let mut mor_map = vec![None; source.num_morphisms()];
        for (a, b) in morphisms {
            mor_map[source.lookup_mor(a.as_ref())?.index()] = Some(target.lookup_mor(b.as_ref())?);
        }
        let obj_map = obj_map
            .into_iter()
            .enumerate()
            .map(|(i, o)| {
                o.ok_or_else(|| {
                    Error::Precondition(format!(
                        "functor leaves object {} unmapped",
                        source.obj_name(Obj(i as u32))
                    ))
                })
            })
            .collect::<Result<_>>()?;
        let mor_map = mor_map
            .into_iter()
            .enumerate()
            .map(|(i, m)| {
                m.ok_or_else(|| {
                    Error::Precondition(format!(
                        "functor leaves morphism {} unmapped",
                        source.mor_name(Mor(i as u32))
                    ))
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self { obj_map, mor_map })
    }
}

/// Exhaustive check that `functor` preserves endpoints, identities and composition.
pub fn validate_functor(
    functor: &FunctorTable,
    source: &FinCategory,
    target: &FinCategory,
) -> ValidationReport {
    let mut violations = Vec::new();
    if functor.obj_map.len() != source.num_objects() {
        violations.push(Violation::FunctorSize {
            what: "object",
            expected: source.num_objects(),
            found: functor.obj_map.len(),
        });
    }
    if functor.mor_map.len() != source.num_morphisms() {
        violations.push(Violation::FunctorSize {
            what: "morphism",
            expected: source.num_morphisms(),
            found: functor.mor_map.len(),
        });
    }
    if !violations.is_empty() {
        return ValidationReport { violations };
    }
    for m in source.morphisms() {
        let fm = functor.on_mor(m);
        if target.src(fm) != functor.on_obj(source.src(m))
            || target.tgt(fm) != functor.on_obj(source.tgt(m))
        {
            violations.push(Violation::FunctorEndpoints {
                morphism: source.mor_name(m).to_string(),
            });
        }
    }
    for o in source.objects() {
        let (Some(id), Some(tid)) = (
            source.try_identity(o),
            target.try_identity(functor.on_obj(o)),
        ) else {
            continue;
        };
        if functor.on_mor(id) != tid {
            violations.push(Violation::FunctorIdentity {
                object: source.obj_name(o).to_string(),
            });
        }
    }
    for (f, g, h) in source.composition_entries() {
        if target.comp(functor.on_mor(f), functor.on_mor(g)) != Some(functor.on_mor(h)) {
            violations.push(Violation::FunctorComposition {
                first: source.mor_name(f).to_string(),
                second: source.mor_name(g).to_string(),
            });
        }
    }
    ValidationReport { violations }
}

/// A finite directed multigraph with dense object and arrow indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinGraph {
    pub num_objects: usize,
    pub src: Vec<usize>,
    pub tgt: Vec<usize>,
}

impl FinGraph {
    pub fn num_arrows(&self) -> usize {
        self.src.len()
    }

    /// Underlying graph of a category.
    pub fn of_category(c: &FinCategory) -> Self {
        Self {
            num_objects: c.num_objects(),
            src: c.morphisms().map(|m| c.src(m).index()).collect(),
            tgt: c.morphisms().map(|m| c.tgt(m).index()).collect(),
        }
    }
}

/// A graph morphism given by its object and arrow maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphMorphism {
    pub obj_map: Vec<usize>,
    pub arrow_map: Vec<usize>,
}

impl GraphMorphism {
    pub fn is_valid(&self, from: &FinGraph, to: &FinGraph) -> bool {
        self.obj_map.len() == from.num_objects
            && self.arrow_map.len() == from.num_arrows()
            && self.obj_map.iter().all(|&o| o < to.num_objects)
            && (0..from.num_arrows()).all(|a| {
                let b = self.arrow_map[a];
                b < to.num_arrows()
                    && to.src[b] == self.obj_map[from.src[a]]
                    && to.tgt[b] == self.obj_map[from.tgt[a]]
            })
    }

    /// `self` then `other`.
    pub fn then(&self, other: &GraphMorphism) -> GraphMorphism {
        GraphMorphism {
            obj_map: self.obj_map.iter().map(|&o| other.obj_map[o]).collect(),
            arrow_map: self.arrow_map.iter().map(|&a| other.arrow_map[a]).collect(),
        }
    }
}

/// An equivalence relation on the arrows of a graph, intended to relate
/// only parallel arrows.
#[derive(Debug, Clone)]
pub struct GraphCongruence {
    pub base: FinGraph,
    partition: UnionFind,
}

impl GraphCongruence {
    /// The discrete congruence: every arrow in its own class.
    pub fn discrete(base: FinGraph) -> Self {
        let partition = UnionFind::new(base.num_arrows());
        Self { base, partition }
    }

    pub fn relate(&mut self, a: usize, b: usize) {
        self.partition.union(a, b);
    }

    pub fn related(&mut self, a: usize, b: usize) -> bool {
        self.partition.same(a, b)
    }

    /// Class labels numbered by smallest member.
    pub fn labels(&self) -> Vec<usize> {
        self.partition.labels()
    }

    /// Finds a related pair of non-parallel arrows, if any.
    pub fn check_parallel(&self) -> Result<()> {
        let labels = self.labels();
        let mut first: HashMap<usize, usize> = HashMap::new();
        for (a, &l) in labels.iter().enumerate() {
            let r = *first.entry(l).or_insert(a);
            if self.base.src[a] != self.base.src[r] || self.base.tgt[a] != self.base.tgt[r] {
                return Err(Error::NotParallel { a: r, b: a });
            }
        }
        Ok(())
    }
}

/// Quotient of `cong.base` by `cong`, together with the quotient graph
/// morphism (identity on objects, class map on arrows).
pub fn quotient_graph(cong: &GraphCongruence) -> Result<(FinGraph, GraphMorphism)> {
    cong.check_parallel()?;
    let labels = cong.labels();
    let n = labels.iter().copied().max().map_or(0, |m| m + 1);
    let mut src = vec![0; n];
    let mut tgt = vec![0; n];
    for (a, &l) in labels.iter().enumerate() {
        src[l] = cong.base.src[a];
        tgt[l] = cong.base.tgt[a];
    }
    let quotient = FinGraph {
        num_objects: cong.base.num_objects,
        src,
        tgt,
    };
    let quo = GraphMorphism {
        obj_map: (0..cong.base.num_objects).collect(),
        arrow_map: labels,
    };
    Ok((quotient, quo))
}

/// The unique factorisation of `f` through the quotient morphism `quo`,
/// or an error if `f` is not constant on classes.
pub fn factor_through_quotient(
    quo: &GraphMorphism,
    quotient: &FinGraph,
    f: &GraphMorphism,
) -> Result<GraphMorphism> {
    let mut arrow_map: Vec<Option<usize>> = vec![None; quotient.num_arrows()];
    for (a, &class) in quo.arrow_map.iter().enumerate() {
        match arrow_map[class] {
            Some(b) if b != f.arrow_map[a] => {
                return Err(Error::Precondition(format!(
                    "graph morphism separates arrows of class {class}"
                )))
            }
            _ => arrow_map[class] = Some(f.arrow_map[a]),
        }
    }
    Ok(GraphMorphism {
        obj_map: f.obj_map.clone(),
        arrow_map: arrow_map
            .into_iter()
            .map(|a| a.expect("every class has a member"))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ch3() -> FinCategory {
        FinCategory::from_table(
            &["0", "1", "2"],
            &[
                ("i_0", "0", "0"),
                ("i_1", "1", "1"),
                ("i_2", "2", "2"),
                ("m_0_1", "0", "1"),
                ("m_0_2", "0", "2"),
                ("m_1_2", "1", "2"),
            ],
            &[("0", "i_0"), ("1", "i_1"), ("2", "i_2")],
            &[
                ("i_0", "i_0", "i_0"),
                ("i_0", "m_0_1", "m_0_1"),
                ("i_0", "m_0_2", "m_0_2"),
                ("i_1", "i_1", "i_1"),
                ("i_1", "m_1_2", "m_1_2"),
                ("i_2", "i_2", "i_2"),
                ("m_0_1", "i_1", "m_0_1"),
                ("m_0_1", "m_1_2", "m_0_2"),
                ("m_0_2", "i_2", "m_0_2"),
                ("m_1_2", "i_2", "m_1_2"),
            ],
        )
        .unwrap()
    }

    #[test]
    fn chain_validates() {
        let c = ch3();
        assert!(c.validate().is_ok(), "{}", c.validate());
        let f = c.mor_id("m_0_1").unwrap();
        let g = c.mor_id("m_1_2").unwrap();
        assert_eq!(c.mor_name(c.compose(f, g).unwrap()), "m_0_2");
        assert_eq!(c.compose(c.identity(Obj(0)), f).unwrap(), f);
    }

    #[test]
    fn missing_composite_reported() {
        let c = FinCategory::from_table(
            &["0", "1", "2"],
            &[
                ("i_0", "0", "0"),
                ("i_1", "1", "1"),
                ("i_2", "2", "2"),
                ("m_0_1", "0", "1"),
                ("m_0_2", "0", "2"),
                ("m_1_2", "1", "2"),
            ],
            &[("0", "i_0"), ("1", "i_1"), ("2", "i_2")],
            &[
                ("i_0", "i_0", "i_0"),
                ("i_0", "m_0_1", "m_0_1"),
                ("i_0", "m_0_2", "m_0_2"),
                ("i_1", "i_1", "i_1"),
                ("i_1", "m_1_2", "m_1_2"),
                ("i_2", "i_2", "i_2"),
                ("m_0_1", "i_1", "m_0_1"),
                ("m_0_2", "i_2", "m_0_2"),
                ("m_1_2", "i_2", "m_1_2"),
            ],
        )
        .unwrap();
        let report = c.validate();
        assert_eq!(
            report.violations,
            vec![Violation::MissingComposite {
                first: "m_0_1".into(),
                second: "m_1_2".into()
            }]
        );
        assert!(report.to_string().contains("missing composite"));
    }

    #[test]
    fn broken_associativity_reported() {
        // (a·b)·a = b·a = a but a·(b·a) = a·a = b.
        let c = FinCategory::from_table(
            &["*"],
            &[("1", "*", "*"), ("a", "*", "*"), ("b", "*", "*")],
            &[("*", "1")],
            &[
                ("1", "1", "1"),
                ("1", "a", "a"),
                ("1", "b", "b"),
                ("a", "1", "a"),
                ("b", "1", "b"),
                ("a", "a", "b"),
                ("a", "b", "b"),
                ("b", "a", "a"),
                ("b", "b", "b"),
            ],
        )
        .unwrap();
        let report = c.validate();
        assert!(report.violations.contains(&Violation::Associativity {
            f: "a".into(),
            g: "b".into(),
            h: "a".into()
        }));
    }

    #[test]
    fn compose_rejects_non_composable() {
        let c = ch3();
        let f = c.mor_id("m_0_1").unwrap();
        let err = c.compose(f, f).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("m_0_1") && msg.contains("target 1") && msg.contains("source 0"));
    }

    #[test]
    fn empty_category_is_valid() {
        let c = FinCategory::from_table::<&str>(&[], &[], &[], &[]).unwrap();
        assert!(c.validate().is_ok());
        assert_eq!(c.num_morphisms(), 0);
    }

    #[test]
    fn identity_functor_and_planted_defect() {
        let c = ch3();
        let id = FunctorTable::identity(&c);
        assert!(validate_functor(&id, &c, &c).is_ok());

        // Collapse 0 and 1 onto 0: m_0_1 must go to i_0, but send it to m_0_2.
        let bad = FunctorTable::from_names(
            &c,
            &c,
            &[("0", "0"), ("1", "0"), ("2", "2")],
            &[
                ("i_0", "i_0"),
                ("i_1", "i_0"),
                ("i_2", "i_2"),
                ("m_0_1", "i_0"),
                ("m_0_2", "m_0_2"),
                ("m_1_2", "i_0"),
            ],
        )
        .unwrap();
        assert!(!validate_functor(&bad, &c, &c).is_ok());
    }

    #[test]
    fn opposite_is_involutive() {
        let c = ch3();
        let op = c.opposite();
        assert!(op.validate().is_ok());
        assert_eq!(op.opposite(), c);
    }

    #[test]
    fn discrete_quotient_is_bijective() {
        let g = FinGraph::of_category(&ch3());
        let (q, quo) = quotient_graph(&GraphCongruence::discrete(g.clone())).unwrap();
        assert_eq!(q, g);
        assert_eq!(quo.arrow_map, (0..g.num_arrows()).collect::<Vec<_>>());
    }

    #[test]
    fn parallel_pair_collapses_to_one_arrow() {
        // X ⇉ Y with identities; relate f and g.
        let g = FinGraph {
            num_objects: 2,
            src: vec![0, 1, 0, 0],
            tgt: vec![0, 1, 1, 1],
        };
        let mut cong = GraphCongruence::discrete(g);
        cong.relate(2, 3);
        let (q, quo) = quotient_graph(&cong).unwrap();
        assert_eq!(q.num_arrows(), 3);
        assert_eq!(quo.arrow_map[2], quo.arrow_map[3]);
        assert_eq!((q.src[2], q.tgt[2]), (0, 1));
    }

    #[test]
    fn non_parallel_relation_rejected() {
        let g = FinGraph {
            num_objects: 2,
            src: vec![0, 1],
            tgt: vec![0, 1],
        };
        let mut cong = GraphCongruence::discrete(g);
        cong.relate(0, 1);
        assert!(matches!(quotient_graph(&cong), Err(Error::NotParallel { .. })));
    }

    // Every class-constant graph morphism into a small graph factors uniquely
    // through the quotient.
    #[test]
    fn quotient_universal_property() {
        let g = FinGraph {
            num_objects: 2,
            src: vec![0, 1, 0, 0, 0],
            tgt: vec![0, 1, 1, 1, 1],
        };
        let mut cong = GraphCongruence::discrete(g.clone());
        cong.relate(2, 3);
        let (q, quo) = quotient_graph(&cong).unwrap();
        // Target: 2 objects, a loop on each and two arrows 0 -> 1.
        let h = FinGraph {
            num_objects: 2,
            src: vec![0, 1, 0, 0],
            tgt: vec![0, 1, 1, 1],
        };
        let mut seen = 0;
        for a2 in 2..4 {
            for a4 in 2..4 {
                let f = GraphMorphism {
                    obj_map: vec![0, 1],
                    arrow_map: vec![0, 1, a2, a2, a4],
                };
                assert!(f.is_valid(&g, &h));
                let fbar = factor_through_quotient(&quo, &q, &f).unwrap();
                assert!(fbar.is_valid(&q, &h));
                assert_eq!(quo.then(&fbar), f);
                seen += 1;
            }
        }
        assert_eq!(seen, 4);
        let separating = GraphMorphism {
            obj_map: vec![0, 1],
            arrow_map: vec![0, 1, 2, 3, 2],
        };
        assert!(factor_through_quotient(&quo, &q, &separating).is_err());
    }
}
