//! JSON input documents and canonical output.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::linalg::{Int, Matrix};
use crate::module::DModule;
use crate::rootdatum::{DatumSequence, GroupDatum, RootDatum, SequenceKind};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupDoc {
    Table { mul: Vec<Vec<usize>> },
    Perm { degree: usize, generators: Vec<Vec<usize>> },
}

/// A document given inline or by corpus name.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ref<T> {
    Name(String),
    Inline(T),
}

/// Action matrices keyed by element index, on a generating set of Δ.
pub type ActionDoc = BTreeMap<String, Vec<Vec<Int>>>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDoc {
    pub group: Ref<GroupDoc>,
    pub ngens: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Vec<Int>>,
    /// Omitted for the trivial action.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub action: ActionDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumDoc {
    #[serde(default = "trivial_group_ref")]
    pub group: Ref<GroupDoc>,
    #[serde(rename = "X_rank")]
    pub x_rank: usize,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub action: ActionDoc,
    #[serde(default)]
    pub roots: Vec<Vec<Int>>,
    #[serde(default)]
    pub coroots: Vec<Vec<Int>>,
}

fn trivial_group_ref() -> Ref<GroupDoc> {
    Ref::Name("trivial".to_string())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SequenceDoc {
    /// `1 → T → G → G/T → 1`, the torus given by cocharacters of `G`.
    CentralTorusQuotient {
        datum: Ref<DatumDoc>,
        torus: Vec<Vec<Int>>,
    },
    DerivedCoradical {
        datum: Ref<DatumDoc>,
    },
    Product {
        left: Ref<DatumDoc>,
        right: Ref<DatumDoc>,
    },
}

/// Any input document, tagged by `"type"` in corpus files.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", content = "document", rename_all = "snake_case")]
pub enum Document {
    Group(GroupDoc),
    Module(ModuleDoc),
    Datum(DatumDoc),
    Sequence(SequenceDoc),
}

impl Document {
    pub fn type_name(&self) -> &'static str {
        match self {
            Document::Group(_) => "group",
            Document::Module(_) => "module",
            Document::Datum(_) => "datum",
            Document::Sequence(_) => "sequence",
        }
    }
}

/// Resolves corpus names while building values from documents.
pub trait Resolver {
    fn document(&self, name: &str) -> Result<Document>;
}

impl GroupDoc {
    pub fn build(&self, cfg: &Config) -> Result<FiniteGroup> {
        match self {
            GroupDoc::Table { mul } => {
                if mul.len() > cfg.order_budget {
                    return Err(Error::budget("group order", mul.len(), cfg.order_budget));
                }
                FiniteGroup::from_table(mul)
            }
            GroupDoc::Perm { degree, generators } => FiniteGroup::from_permutations(*degree, generators, cfg),
        }
    }
}

fn matrix(rows: &[Vec<Int>], cols: usize, what: &str) -> Result<Matrix> {
    if let Some(r) = rows.iter().find(|r| r.len() != cols) {
        return Err(Error::Input(format!(
            "{what}: row of length {} where {cols} expected",
            r.len()
        )));
    }
    Ok(Matrix::from_int_rows(rows.to_vec(), cols))
}

fn group_of(r: &Ref<GroupDoc>, res: &dyn Resolver, cfg: &Config) -> Result<FiniteGroup> {
    match r {
        Ref::Inline(g) => g.build(cfg),
        Ref::Name(n) => match res.document(n)? {
            Document::Group(g) => g.build(cfg),
            d => Err(Error::Input(format!(
                "{n} is a {} document, not a group",
                d.type_name()
            ))),
        },
    }
}

fn module_from(group: &FiniteGroup, ngens: usize, relations: &[Vec<Int>], action: &ActionDoc) -> Result<DModule> {
    let rel = matrix(relations, ngens, "relations")?;
    if action.is_empty() {
        let id = Matrix::identity(ngens);
        let gens: Vec<(usize, Matrix)> = group.generators().into_iter().map(|g| (g, id.clone())).collect();
        return DModule::from_generator_action(group, ngens, &rel, &gens);
    }
    let mut gens = Vec::with_capacity(action.len());
    for (k, rows) in action {
        let g: usize = k
            .parse()
            .map_err(|_| Error::Input(format!("action key {k:?} is not an element index")))?;
        gens.push((g, matrix(rows, ngens, "action")?));
    }
    DModule::from_generator_action(group, ngens, &rel, &gens)
}

impl ModuleDoc {
    pub fn build(&self, res: &dyn Resolver, cfg: &Config) -> Result<DModule> {
        let g = group_of(&self.group, res, cfg)?;
        module_from(&g, self.ngens, &self.relations, &self.action)
    }
}

impl DatumDoc {
    pub fn build(&self, res: &dyn Resolver, cfg: &Config) -> Result<GroupDatum> {
        let g = group_of(&self.group, res, cfg)?;
        let x = module_from(&g, self.x_rank, &[], &self.action)?;
        for v in self.roots.iter().chain(&self.coroots) {
            if v.len() != self.x_rank {
                return Err(Error::Input(format!(
                    "root or coroot of length {} in rank {}",
                    v.len(),
                    self.x_rank
                )));
            }
        }
        GroupDatum::new(RootDatum::new(&x, self.roots.clone(), self.coroots.clone()))
    }
}

fn datum_of(r: &Ref<DatumDoc>, res: &dyn Resolver, cfg: &Config) -> Result<GroupDatum> {
    match r {
        Ref::Inline(d) => d.build(res, cfg),
        Ref::Name(n) => match res.document(n)? {
            Document::Datum(d) => d.build(res, cfg),
            d => Err(Error::Input(format!(
                "{n} is a {} document, not a datum",
                d.type_name()
            ))),
        },
    }
}

impl SequenceDoc {
    pub fn kind(&self, res: &dyn Resolver, cfg: &Config) -> Result<SequenceKind> {
        Ok(match self {
            SequenceDoc::CentralTorusQuotient { datum, torus } => SequenceKind::CentralTorusQuotient {
                datum: datum_of(datum, res, cfg)?,
                torus: torus.clone(),
            },
            SequenceDoc::DerivedCoradical { datum } => SequenceKind::DerivedCoradical {
                datum: datum_of(datum, res, cfg)?,
            },
            SequenceDoc::Product { left, right } => SequenceKind::Product {
                left: datum_of(left, res, cfg)?,
                right: datum_of(right, res, cfg)?,
            },
        })
    }

    pub fn build(&self, res: &dyn Resolver, cfg: &Config) -> Result<DatumSequence> {
        DatumSequence::build(&self.kind(res, cfg)?)
    }
}

/// Parses a document of the given type, accepting both the bare form and the
/// `{"type": ..., "document": ...}` envelope.
pub fn parse_as<T: for<'de> Deserialize<'de>>(text: &str, ty: &str) -> Result<T> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Input(format!("malformed JSON: {e}")))?;
    let inner = match &v {
        Value::Object(m) if m.get("type").and_then(Value::as_str) == Some(ty) && m.contains_key("document") => {
            m["document"].clone()
        }
        _ => v,
    };
    serde_json::from_value(inner).map_err(|e| Error::Input(format!("not a valid {ty} document: {e}")))
}

fn sorted(v: Value) -> Value {
    match v {
        Value::Object(m) => {
            let mut entries: Vec<(String, Value)> = m.into_iter().collect();
            entries.sort_by(|a, b| a.0.cmp(&b.0));
            Value::Object(entries.into_iter().map(|(k, v)| (k, sorted(v))).collect())
        }
        Value::Array(a) => Value::Array(a.into_iter().map(sorted).collect()),
        other => other,
    }
}

/// Sorted keys, two-space indentation, trailing newline.
pub fn canonical_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let v = serde_json::to_value(value).map_err(|e| Error::Input(format!("serialization failed: {e}")))?;
    let mut s = serde_json::to_string_pretty(&sorted(v)).expect("values always serialize");
    s.push('\n');
    Ok(s)
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}
