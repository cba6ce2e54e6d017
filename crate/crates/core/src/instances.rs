//! Generators for the shipped desk-scale instances.

use std::collections::HashSet;

use crate::category::{CategoryBuilder, FinCategory, Mor, Obj};
use crate::denominators::{DenominatorData, Which};
use crate::error::{Error, Result};
use crate::transport::{AdditionTable, ChosenLimit, CoproductData};

/// A named category with denominators and optional transport data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub name: String,
    pub dd: DenominatorData,
    pub coproducts: Option<CoproductData>,
    pub products: Option<CoproductData>,
    pub addition: Option<AdditionTable>,
}

impl Instance {
    pub fn new(name: impl Into<String>, dd: DenominatorData) -> Self {
        Self {
            name: name.into(),
            dd,
            coproducts: None,
            products: None,
            addition: None,
        }
    }

    pub fn base(&self) -> &FinCategory {
        &self.dd.base
    }

    /// Same instance with `S` and `T` replaced by named morphisms.
    pub fn with_st<S: AsRef<str>>(mut self, name: &str, s: &[S], t: &[S]) -> Result<Self> {
        let look = |ns: &[S]| -> Result<Vec<Mor>> {
            ns.iter().map(|n| self.dd.base.lookup_mor(n.as_ref())).collect()
        };
        let (s, t) = (look(s)?, look(t)?);
        self.dd = self.dd.with_st(&s, &t)?;
        self.name = name.to_string();
        Ok(self)
    }
}

/// Which morphisms of a generated instance are denominators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Selector {
    All,
    Identities,
    Listed(Vec<String>),
}

fn select(c: &FinCategory, selector: &Selector) -> Result<Vec<Mor>> {
    match selector {
        Selector::All => Ok(c.morphisms().collect()),
        Selector::Identities => Ok(c.morphisms().filter(|&m| c.is_identity(m)).collect()),
        Selector::Listed(names) => names.iter().map(|n| c.lookup_mor(n)).collect(),
    }
}

/// The poset on `objects` given by the full order relation `leq` (pairs
/// `(x, y)` with `x ≤ y`). Identities are named `i_X`, the other morphisms
/// `m_X_Y`; joins and meets become chosen coproducts and products whenever
/// they exist for every pair.
pub fn make_poset(name: &str, objects: &[&str], leq: &[(&str, &str)], selector: &Selector) -> Result<Instance> {
    let pos = |s: &str| {
        objects
            .iter()
            .position(|&o| o == s)
            .ok_or_else(|| Error::UnknownId {
                kind: "object",
                id: s.to_string(),
            })
    };
    let n = objects.len();
    let mut rel = vec![vec![false; n]; n];
    for &(x, y) in leq {
        rel[pos(x)?][pos(y)?] = true;
    }
    for (x, row) in rel.iter().enumerate() {
        if !row[x] {
            return Err(Error::Precondition(format!("order is not reflexive at {}", objects[x])));
        }
    }
    for x in 0..n {
        for y in 0..n {
            if x != y && rel[x][y] && rel[y][x] {
                return Err(Error::Precondition(format!(
                    "order is not antisymmetric at ({}, {})",
                    objects[x], objects[y]
                )));
            }
            for z in 0..n {
                if rel[x][y] && rel[y][z] && !rel[x][z] {
                    return Err(Error::Precondition(format!(
                        "order is not transitive at ({}, {}, {})",
                        objects[x], objects[y], objects[z]
                    )));
                }
            }
        }
    }
    let mor_name = |x: usize, y: usize| {
        if x == y {
            format!("i_{}", objects[x])
        } else {
            format!("m_{}_{}", objects[x], objects[y])
        }
    };
    let mut b = CategoryBuilder::new();
    for o in objects {
        b.object(*o)?;
    }
    for x in 0..n {
        b.morphism(mor_name(x, x), objects[x], objects[x])?;
    }
    for x in 0..n {
        for y in 0..n {
            if x != y && rel[x][y] {
                b.morphism(mor_name(x, y), objects[x], objects[y])?;
            }
        }
    }
    for x in 0..n {
        b.identity(objects[x], &mor_name(x, x))?;
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if rel[x][y] && rel[y][z] {
                    b.composite(&mor_name(x, y), &mor_name(y, z), &mor_name(x, z))?;
                }
            }
        }
    }
    let c = b.build()?;
    let d = select(&c, selector)?;
    let dd = DenominatorData::uniform(c, &d)?;
    let mut inst = Instance::new(name, dd);
    inst.coproducts = poset_bounds(&inst.dd.base, &rel, false);
    inst.products = poset_bounds(&inst.dd.base, &rel, true);
    Ok(inst)
}

/// Joins and bottom (or meets and top, when `dual`) as chosen coproducts
/// (products), if they exist throughout.
fn poset_bounds(c: &FinCategory, rel: &[Vec<bool>], dual: bool) -> Option<CoproductData> {
    let n = rel.len();
    let le = |x: usize, y: usize| if dual { rel[y][x] } else { rel[x][y] };
    let arrow = |x: usize, y: usize| {
        let (s, t) = if dual { (y, x) } else { (x, y) };
        c.hom(Obj(s as u32), Obj(t as u32))[0]
    };
    let least = |cands: Vec<usize>| cands.iter().copied().find(|&u| cands.iter().all(|&v| le(u, v)));
    let initial = least((0..n).collect())?;
    let mut entries = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let upper: Vec<usize> = (0..n).filter(|&u| le(x, u) && le(y, u)).collect();
            let j = least(upper)?;
            entries.push(ChosenLimit {
                of: [Obj(x as u32), Obj(y as u32)],
                object: Obj(j as u32),
                maps: [arrow(x, j), arrow(y, j)],
            });
        }
    }
    Some(CoproductData {
        initial: Some(Obj(initial as u32)),
        entries,
    })
}

/// The total order `0 < 1 < … < n-1`.
pub fn chain(n: usize, selector: &Selector) -> Result<Instance> {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let objs: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut leq = Vec::new();
    for x in 0..n {
        for y in x..n {
            leq.push((objs[x], objs[y]));
        }
    }
    make_poset(&format!("CHAIN{n}"), &objs, &leq, selector)
}

/// `n` pairwise incomparable objects.
pub fn antichain(n: usize, selector: &Selector) -> Result<Instance> {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let objs: Vec<&str> = names.iter().map(String::as_str).collect();
    let leq: Vec<(&str, &str)> = objs.iter().map(|&o| (o, o)).collect();
    make_poset(&format!("ANTICHAIN{n}"), &objs, &leq, selector)
}

/// The diamond lattice `bot < a, b < top`.
pub fn diamond(selector: &Selector) -> Result<Instance> {
    let objs = ["bot", "a", "b", "top"];
    let mut leq = Vec::new();
    for o in objs {
        leq.push((o, o));
        if o != "bot" {
            leq.push(("bot", o));
        }
        if o != "top" && o != "bot" {
            leq.push((o, "top"));
        }
    }
    make_poset("DIA", &objs, &leq, selector)
}

/// A one-object category from a monoid multiplication table over the named
/// elements; `table[x][y]` is the index of `x · y` (first `x`, then `y`).
pub fn make_monoid(name: &str, elements: &[&str], table: &[Vec<usize>], d: &[&str]) -> Result<Instance> {
    let n = elements.len();
    if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&v| v >= n)) {
        return Err(Error::Precondition("multiplication table has the wrong shape".into()));
    }
    let unit = (0..n)
        .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
        .ok_or_else(|| Error::Precondition("multiplication table has no unit".into()))?;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if table[table[x][y]][z] != table[x][table[y][z]] {
                    return Err(Error::Precondition(format!(
                        "multiplication is not associative at ({}, {}, {})",
                        elements[x], elements[y], elements[z]
                    )));
                }
            }
        }
    }
    let mut b = CategoryBuilder::new();
    b.object("*")?;
    for e in elements {
        b.morphism(*e, "*", "*")?;
    }
    b.identity("*", elements[unit])?;
    for x in 0..n {
        for y in 0..n {
            b.composite(elements[x], elements[y], elements[table[x][y]])?;
        }
    }
    let c = b.build()?;
    let dd = DenominatorData::from_names(c, d, d, d)?;
    Ok(Instance::new(name, dd))
}

fn modular(n: usize, op: impl Fn(usize, usize) -> usize) -> Vec<Vec<usize>> {
    (0..n).map(|x| (0..n).map(|y| op(x, y) % n).collect()).collect()
}

fn ring_mod(name: &str, n: usize, d: &[&str]) -> Result<Instance> {
    let names: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let elems: Vec<&str> = names.iter().map(String::as_str).collect();
    let mut inst = make_monoid(name, &elems, &modular(n, |x, y| x * y), d)?;
    let add = modular(n, |x, y| x + y);
    let mut entries = Vec::new();
    for x in 0..n {
        for y in 0..n {
            entries.push((Mor(x as u32), Mor(y as u32), Mor(add[x][y] as u32)));
        }
    }
    inst.addition = Some(AdditionTable::new(entries));
    Ok(inst)
}

pub const NAMED: &[&str] = &[
    "WALK", "CH3", "CH3-B", "DIA", "DIA-B", "PAR", "PAR-F", "IDEM", "Z4", "Z2", "ZERO", "CH3-BAD23",
];

/// Instances expected to be uni-fractionable.
pub const POSITIVE: &[&str] = &["WALK", "CH3", "CH3-B", "DIA", "DIA-B", "PAR", "Z4", "Z2", "ZERO"];

/// A built-in instance by name.
pub fn make_named(name: &str) -> Result<Instance> {
    let ch3_d = || Selector::Listed(vec!["i_0".into(), "i_1".into(), "i_2".into(), "m_0_1".into()]);
    let inst = match name {
        "WALK" => {
            let c = FinCategory::from_table(
                &["X", "Y"],
                &[("1_X", "X", "X"), ("1_Y", "Y", "Y"), ("f", "X", "Y")],
                &[("X", "1_X"), ("Y", "1_Y")],
                &[
                    ("1_X", "1_X", "1_X"),
                    ("1_X", "f", "f"),
                    ("f", "1_Y", "f"),
                    ("1_Y", "1_Y", "1_Y"),
                ],
            )?;
            let all: Vec<Mor> = c.morphisms().collect();
            Instance::new(name, DenominatorData::uniform(c, &all)?)
        }
        "PAR" | "PAR-F" => {
            let c = FinCategory::from_table(
                &["X", "Y"],
                &[("1_X", "X", "X"), ("1_Y", "Y", "Y"), ("f", "X", "Y"), ("g", "X", "Y")],
                &[("X", "1_X"), ("Y", "1_Y")],
                &[
                    ("1_X", "1_X", "1_X"),
                    ("1_X", "f", "f"),
                    ("1_X", "g", "g"),
                    ("f", "1_Y", "f"),
                    ("g", "1_Y", "g"),
                    ("1_Y", "1_Y", "1_Y"),
                ],
            )?;
            let d: &[&str] = if name == "PAR" { &["1_X", "1_Y"] } else { &["1_X", "1_Y", "f"] };
            Instance::new(name, DenominatorData::from_names(c, d, d, d)?)
        }
        "CH3" => rename(chain(3, &ch3_d())?, name),
        "CH3-B" => chain(3, &ch3_d())?.with_st(name, &["i_0", "i_1", "i_2", "m_0_1"], &["i_0", "i_1", "i_2"])?,
        "CH3-BAD23" => {
            let d = ["i_0", "i_1", "i_2", "m_0_1", "m_0_2"];
            let mut inst = chain(3, &Selector::Listed(d.iter().map(|s| s.to_string()).collect()))?;
            inst = inst.with_st(name, &["i_0", "i_1", "i_2"], &d)?;
            inst
        }
        "DIA" => diamond(&Selector::All)?,
        "DIA-B" => {
            let inst = diamond(&Selector::All)?;
            let all: Vec<String> = inst.base().morphisms().map(|m| inst.base().mor_name(m).to_string()).collect();
            let ids: Vec<String> = ["i_bot", "i_a", "i_b", "i_top"].map(String::from).to_vec();
            inst.with_st(name, &all, &ids)?
        }
        "IDEM" => make_monoid(name, &["1", "e"], &[vec![0, 1], vec![1, 1]], &["1", "e"])?,
        "Z4" => ring_mod(name, 4, &["1", "3"])?,
        "Z2" => ring_mod(name, 2, &["1"])?,
        "ZERO" => ring_mod(name, 1, &["0"])?,
        _ => return Err(Error::UnknownInstance(name.to_string())),
    };
    Ok(inst)
}

fn rename(mut inst: Instance, name: &str) -> Instance {
    inst.name = name.to_string();
    inst
}

/// Looks up objects by name, dropping repeats.
pub fn objects_named(c: &FinCategory, names: &[&str]) -> Result<Vec<Obj>> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for n in names {
        let o = c.lookup_obj(n)?;
        if seen.insert(o) {
            out.push(o);
        }
    }
    Ok(out)
}

/// One-line summary of an instance and its denominator subsets.
pub fn describe(inst: &Instance) -> String {
    let c = inst.base();
    let names = |w| {
        inst.dd
            .members(w)
            .into_iter()
            .map(|m| c.mor_name(m).to_string())
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!(
        "{}: {} objects, {} morphisms; D = {{{}}}; S = {{{}}}; T = {{{}}}",
        inst.name,
        c.num_objects(),
        c.num_morphisms(),
        names(Which::D),
        names(Which::S),
        names(Which::T)
    )
}
