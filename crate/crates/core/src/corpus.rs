//! The bundled example documents.

use crate::config::Config;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::module::DModule;
use crate::rootdatum::{DatumSequence, GroupDatum};
use crate::schema::{canonical_json, parse_as, Document, Resolver};

macro_rules! entries {
    ($($name:literal),* $(,)?) => {
        &[$(($name, include_str!(concat!("../corpus/", $name, ".json")))),*]
    };
}

const ENTRIES: &[(&str, &str)] = entries![
    "gl2",
    "gl2.z2",
    "gl3",
    "gl4",
    "gm",
    "induced.z3",
    "norm-one.v4",
    "norm-one.z3",
    "pgl2",
    "pgl2.z2",
    "pgl3",
    "pgl4",
    "pu3.qs",
    "regular.z2",
    "regular.z3",
    "s3",
    "seq.gl3-pgl3",
    "seq.gln-pgln",
    "seq.sl2-gl2-gm",
    "seq.sl2xpgl2",
    "seq.u2-derived",
    "seq.u2-scalars",
    "sign-torus",
    "sign",
    "sign.s3",
    "sl2",
    "sl2.z2",
    "sl3",
    "sl4",
    "so5",
    "sp4",
    "su3.qs",
    "trivial",
    "u2",
    "v4",
    "z-mod-2.z2",
    "z.z2",
    "z2",
    "z3",
    "z4",
    "z6",
];

/// Names in sorted order.
pub fn list() -> Vec<&'static str> {
    let mut v: Vec<&str> = ENTRIES.iter().map(|(n, _)| *n).collect();
    v.sort_unstable();
    v
}

/// The canonical text of a corpus document.
pub fn text(name: &str) -> Result<&'static str> {
    ENTRIES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::Input(format!("unknown corpus entry {name:?}")))
}

pub fn get(name: &str) -> Result<Document> {
    parse_document(text(name)?)
}

pub fn parse_document(text: &str) -> Result<Document> {
    serde_json::from_str(text).map_err(|e| Error::Input(format!("not a corpus document: {e}")))
}

/// Resolves names against the bundled corpus only.
#[derive(Clone, Copy, Debug, Default)]
pub struct Corpus;

impl Resolver for Corpus {
    fn document(&self, name: &str) -> Result<Document> {
        get(name)
    }
}

/// Parses and builds a document; the result is discarded.
pub fn validate(doc: &Document, cfg: &Config) -> Result<()> {
    match doc {
        Document::Group(g) => g.build(cfg).map(|_| ()),
        Document::Module(m) => m.build(&Corpus, cfg).map(|_| ()),
        Document::Datum(d) => d.build(&Corpus, cfg).map(|_| ()),
        Document::Sequence(s) => s.build(&Corpus, cfg).map(|_| ()),
    }
}

/// Re-serializes a document in canonical form.
pub fn canonical(doc: &Document) -> Result<String> {
    canonical_json(doc)
}

pub fn group(name: &str, cfg: &Config) -> Result<FiniteGroup> {
    parse_as::<crate::schema::GroupDoc>(text(name)?, "group")?.build(cfg)
}

pub fn module(name: &str, cfg: &Config) -> Result<DModule> {
    parse_as::<crate::schema::ModuleDoc>(text(name)?, "module")?.build(&Corpus, cfg)
}

pub fn datum(name: &str, cfg: &Config) -> Result<GroupDatum> {
    parse_as::<crate::schema::DatumDoc>(text(name)?, "datum")?.build(&Corpus, cfg)
}

pub fn sequence(name: &str, cfg: &Config) -> Result<DatumSequence> {
    parse_as::<crate::schema::SequenceDoc>(text(name)?, "sequence")?.build(&Corpus, cfg)
}

/// Names of entries of one document type.
pub fn names_of(ty: &str) -> Vec<&'static str> {
    list()
        .into_iter()
        .filter(|n| get(n).is_ok_and(|d| d.type_name() == ty))
        .collect()
}

/// All data, built.
pub fn data(cfg: &Config) -> Result<Vec<(&'static str, GroupDatum)>> {
    names_of("datum").into_iter().map(|n| Ok((n, datum(n, cfg)?))).collect()
}

pub fn sequences(cfg: &Config) -> Result<Vec<(&'static str, DatumSequence)>> {
    names_of("sequence")
        .into_iter()
        .map(|n| Ok((n, sequence(n, cfg)?)))
        .collect()
}
