//! Instance documents: loader, canonical writer, localisation output and DOT export.
//!
//! Documents are JSON. The writer is hand-rolled so that key order, line
//! breaks and list order are fixed; two equal instances render to identical
//! bytes.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::category::{CategoryBuilder, FinCategory, Mor};
use crate::denominators::{DenominatorData, Which};
use crate::error::Result;
use crate::fraction::FractionCategory;
use crate::instances::Instance;
use crate::transport::{AdditionTable, ChosenLimit, CoproductData};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismEntry {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoproductEntry {
    pub of: [String; 2],
    pub object: String,
    pub emb: [String; 2],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductEntry {
    pub of: [String; 2],
    pub object: String,
    pub proj: [String; 2],
}

/// The on-disk shape of an instance, or of a localisation when `classes`
/// and `localisation` are present.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Document {
    pub name: String,
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismEntry>,
    pub identities: IndexMap<String, String>,
    pub composition: Vec<[String; 3]>,
    pub denominators: Vec<String>,
    pub s_denominators: Vec<String>,
    pub t_denominators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coproducts: Option<Vec<CoproductEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub terminal: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub products: Option<Vec<ProductEntry>>,
    /// Hom-wise sums as `[f, g, f + g]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub addition: Option<Vec<[String; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub classes: Option<IndexMap<String, Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub localisation: Option<IndexMap<String, String>>,
}

fn names_of(c: &FinCategory, ms: &[Mor]) -> Vec<String> {
    ms.iter().map(|&m| c.mor_name(m).to_string()).collect()
}

fn chosen(c: &FinCategory, cp: &CoproductData) -> Vec<([String; 2], String, [String; 2])> {
    let mut entries: Vec<&ChosenLimit> = cp.entries.iter().collect();
    entries.sort_by_key(|e| e.of);
    entries
        .into_iter()
        .map(|e| {
            (
                e.of.map(|o| c.obj_name(o).to_string()),
                c.obj_name(e.object).to_string(),
                e.maps.map(|m| c.mor_name(m).to_string()),
            )
        })
        .collect()
}

fn lookup_chosen(c: &FinCategory, of: &[String; 2], object: &str, maps: &[String; 2]) -> Result<ChosenLimit> {
    Ok(ChosenLimit {
        of: [c.lookup_obj(&of[0])?, c.lookup_obj(&of[1])?],
        object: c.lookup_obj(object)?,
        maps: [c.lookup_mor(&maps[0])?, c.lookup_mor(&maps[1])?],
    })
}

fn category_fields(c: &FinCategory) -> Document {
    let mut composition = c.composition_entries();
    composition.sort();
    Document {
        objects: c.objects().map(|o| c.obj_name(o).to_string()).collect(),
        morphisms: c
            .morphisms()
            .map(|m| MorphismEntry {
                id: c.mor_name(m).into(),
                src: c.obj_name(c.src(m)).into(),
                tgt: c.obj_name(c.tgt(m)).into(),
            })
            .collect(),
        identities: c
            .objects()
            .filter_map(|o| c.try_identity(o).map(|m| (c.obj_name(o).to_string(), c.mor_name(m).to_string())))
            .collect(),
        composition: composition
            .into_iter()
            .map(|(f, g, h)| [f, g, h].map(|m| c.mor_name(m).to_string()))
            .collect(),
        ..Document::default()
    }
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn from_instance(inst: &Instance) -> Self {
        let c = inst.base();
        let dd = &inst.dd;
        let mut doc = category_fields(c);
        doc.name = inst.name.clone();
        doc.denominators = names_of(c, &dd.members(Which::D));
        doc.s_denominators = names_of(c, &dd.members(Which::S));
        doc.t_denominators = names_of(c, &dd.members(Which::T));
        if let Some(cp) = &inst.coproducts {
            doc.initial = cp.initial.map(|o| c.obj_name(o).to_string());
            doc.coproducts = Some(
                chosen(c, cp)
                    .into_iter()
                    .map(|(of, object, emb)| CoproductEntry { of, object, emb })
                    .collect(),
            );
        }
        if let Some(pp) = &inst.products {
            doc.terminal = pp.initial.map(|o| c.obj_name(o).to_string());
            doc.products = Some(
                chosen(c, pp)
                    .into_iter()
                    .map(|(of, object, proj)| ProductEntry { of, object, proj })
                    .collect(),
            );
        }
        if let Some(add) = &inst.addition {
            let mut entries = add.entries().to_vec();
            entries.sort();
            doc.addition = Some(
                entries
                    .into_iter()
                    .map(|(f, g, h)| [f, g, h].map(|m| c.mor_name(m).to_string()))
                    .collect(),
            );
        }
        doc
    }

    /// Builds the instance; unknown or duplicate ids are errors naming the id.
    pub fn to_instance(&self) -> Result<Instance> {
        let mut b = CategoryBuilder::new();
        for o in &self.objects {
            b.object(o.as_str())?;
        }
        for m in &self.morphisms {
            b.morphism(m.id.as_str(), &m.src, &m.tgt)?;
        }
        for (o, m) in &self.identities {
            b.identity(o, m)?;
        }
        for [f, g, h] in &self.composition {
            b.composite(f, g, h)?;
        }
        let c = b.build()?;
        let dd = DenominatorData::from_names(c, &self.denominators, &self.s_denominators, &self.t_denominators)?;
        let c = dd.base.clone();
        let c = &c;
        let mut inst = Instance::new(self.name.clone(), dd);
        let initial = |o: &Option<String>| o.as_deref().map(|o| c.lookup_obj(o)).transpose();
        if self.coproducts.is_some() || self.initial.is_some() {
            let entries = self.coproducts.iter().flatten();
            inst.coproducts = Some(CoproductData {
                initial: initial(&self.initial)?,
                entries: entries
                    .map(|e| lookup_chosen(c, &e.of, &e.object, &e.emb))
                    .collect::<Result<_>>()?,
            });
        }
        if self.products.is_some() || self.terminal.is_some() {
            let entries = self.products.iter().flatten();
            inst.products = Some(CoproductData {
                initial: initial(&self.terminal)?,
                entries: entries
                    .map(|e| lookup_chosen(c, &e.of, &e.object, &e.proj))
                    .collect::<Result<_>>()?,
            });
        }
        if let Some(add) = &self.addition {
            let entries = add
                .iter()
                .map(|[f, g, h]| Ok((c.lookup_mor(f)?, c.lookup_mor(g)?, c.lookup_mor(h)?)))
                .collect::<Result<_>>()?;
            inst.addition = Some(AdditionTable::new(entries));
        }
        Ok(inst)
    }

    /// Canonical text: fixed key order, one list entry per line.
    pub fn render(&self) -> String {
        let q = |s: &str| serde_json::to_string(s).expect("strings serialise");
        let list = |xs: &[String]| format!("[{}]", xs.iter().map(|x| q(x)).collect::<Vec<_>>().join(", "));
        let block = |items: Vec<String>, open: &str, close: &str| {
            if items.is_empty() {
                format!("{open}{close}")
            } else {
                format!("{open}\n    {}\n  {close}", items.join(",\n    "))
            }
        };
        let mut fields = vec![
            format!("\"name\": {}", q(&self.name)),
            format!("\"objects\": {}", list(&self.objects)),
            format!(
                "\"morphisms\": {}",
                block(
                    self.morphisms
                        .iter()
                        .map(|m| format!("{{\"id\": {}, \"src\": {}, \"tgt\": {}}}", q(&m.id), q(&m.src), q(&m.tgt)))
                        .collect(),
                    "[",
                    "]"
                )
            ),
            format!(
                "\"identities\": {}",
                block(self.identities.iter().map(|(o, m)| format!("{}: {}", q(o), q(m))).collect(), "{", "}")
            ),
            format!("\"composition\": {}", block(self.composition.iter().map(|t| list(t)).collect(), "[", "]")),
            format!("\"denominators\": {}", list(&self.denominators)),
            format!("\"s_denominators\": {}", list(&self.s_denominators)),
            format!("\"t_denominators\": {}", list(&self.t_denominators)),
        ];
        if let Some(o) = &self.initial {
            fields.push(format!("\"initial\": {}", q(o)));
        }
        if let Some(cp) = &self.coproducts {
            let items = cp
                .iter()
                .map(|e| format!("{{\"of\": {}, \"object\": {}, \"emb\": {}}}", list(&e.of), q(&e.object), list(&e.emb)))
                .collect();
            fields.push(format!("\"coproducts\": {}", block(items, "[", "]")));
        }
        if let Some(o) = &self.terminal {
            fields.push(format!("\"terminal\": {}", q(o)));
        }
        if let Some(pp) = &self.products {
            let items = pp
                .iter()
                .map(|e| format!("{{\"of\": {}, \"object\": {}, \"proj\": {}}}", list(&e.of), q(&e.object), list(&e.proj)))
                .collect();
            fields.push(format!("\"products\": {}", block(items, "[", "]")));
        }
        if let Some(add) = &self.addition {
            fields.push(format!("\"addition\": {}", block(add.iter().map(|t| list(t)).collect(), "[", "]")));
        }
        if let Some(classes) = &self.classes {
            let items = classes.iter().map(|(k, ms)| format!("{}: {}", q(k), list(ms))).collect();
            fields.push(format!("\"classes\": {}", block(items, "{", "}")));
        }
        if let Some(loc) = &self.localisation {
            let items = loc.iter().map(|(m, k)| format!("{}: {}", q(m), q(k))).collect();
            fields.push(format!("\"localisation\": {}", block(items, "{", "}")));
        }
        format!("{{\n  {}\n}}\n", fields.join(",\n  "))
    }
}

pub fn load_instance(text: &str) -> Result<Instance> {
    Document::parse(text)?.to_instance()
}

pub fn write_instance(inst: &Instance) -> String {
    Document::from_instance(inst).render()
}

/// Loads and re-emits a document, keeping localisation fields as given.
pub fn canonicalise(text: &str) -> Result<String> {
    let doc = Document::parse(text)?;
    let mut out = Document::from_instance(&doc.to_instance()?);
    out.classes = doc.classes;
    out.localisation = doc.localisation;
    Ok(out.render())
}

/// The fraction category as a document whose denominators are its
/// isomorphisms. The name is a digest of the content, so localisations that
/// agree as categories render identically.
pub fn localise_document(fc: &FractionCategory) -> Document {
    let fr = &fc.as_category;
    let base = fc.base();
    let mut doc = category_fields(fr);
    let isos: Vec<Mor> = fr.morphisms().filter(|&m| fr.is_iso(m)).collect();
    doc.denominators = names_of(fr, &isos);
    doc.s_denominators = doc.denominators.clone();
    doc.t_denominators = doc.denominators.clone();
    doc.classes = Some(
        fr.morphisms()
            .map(|k| (fr.mor_name(k).to_string(), fc.members(k).map(|t| t.render(base)).collect()))
            .collect(),
    );
    doc.localisation = Some(
        base.morphisms()
            .map(|m| (base.mor_name(m).to_string(), fr.mor_name(fc.localise(m)).to_string()))
            .collect(),
    );
    let digest = Sha256::digest(doc.render().as_bytes());
    let hex: String = digest.iter().take(8).map(|b| format!("{b:02x}")).collect();
    doc.name = format!("Fr:{hex}");
    doc
}

/// Objects as nodes, classes as edges labelled by their smallest representative.
pub fn to_dot(fc: &FractionCategory) -> String {
    let fr = &fc.as_category;
    let q = |s: &str| serde_json::to_string(s).expect("strings serialise");
    let mut out = String::from("digraph fraction {\n");
    for o in fr.objects() {
        out.push_str(&format!("  {};\n", q(fr.obj_name(o))));
    }
    for k in fr.morphisms() {
        let label = format!("{}: {}", fr.mor_name(k), fc.representative(k).render(fc.base()));
        out.push_str(&format!(
            "  {} -> {} [label={}];\n",
            q(fr.obj_name(fr.src(k))),
            q(fr.obj_name(fr.tgt(k))),
            q(&label)
        ));
    }
    out.push_str("}\n");
    out
}

