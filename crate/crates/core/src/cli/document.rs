use std::path::Path;

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;

use crate::dgcat::{DgCat, DgCategory, DgCategoryJson, PCat};
use crate::error::Error;
use crate::hopf::HopfJson;
use crate::simplicial::{DgAlgebraJson, StrictMonoidalJson};
use crate::tetra::TetraJson;

/// A dg category with optional marked subcategories, by object label.
/// Read field by field in `Document::parse`: flattening breaks the integer
/// degree keys of the Hom complexes.
#[derive(Serialize)]
pub struct DgCategoryDoc {
    #[serde(flatten)]
    pub category: DgCategoryJson,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub marked: Vec<Vec<String>>,
}

impl DgCategoryDoc {
    pub fn new(c: &DgCategory, marked: &[Vec<usize>]) -> Self {
        let names = c.objects();
        DgCategoryDoc {
            category: DgCategoryJson::from(c),
            marked: marked.iter().map(|m| m.iter().map(|&i| names[i].clone()).collect()).collect(),
        }
    }

    pub fn to_pcat(self) -> Result<PCat, Error> {
        let marked = self.marked;
        let c = DgCategory::try_from(self.category)?;
        let names = c.objects();
        let marked = marked
            .iter()
            .enumerate()
            .map(|(k, m)| {
                m.iter()
                    .map(|o| names.iter().position(|n| n == o).ok_or_else(|| Error::Parse(format!("marked[{k}]: unknown object {o:?}"))))
                    .collect::<Result<Vec<usize>, Error>>()
            })
            .collect::<Result<Vec<_>, Error>>()?;
        PCat::new(c, marked)
    }
}

/// Every file carries a `"kind"` field naming one of these.
pub enum Document {
    Hopf(HopfJson),
    Tetramodule(TetraJson),
    DgCategory(DgCategoryDoc),
    DgAlgebra(DgAlgebraJson),
    Monoidal(StrictMonoidalJson),
}

const KINDS: &str = "hopf, bialgebra, tetramodule, dg-category, dg-algebra, monoidal-dg-category";

fn typed<T: DeserializeOwned>(v: Value) -> Result<T, Error> {
    typed_at(v, "")
}

/// Deserializes `v`, naming the failing field below `prefix`.
fn typed_at<T: DeserializeOwned>(v: Value, prefix: &str) -> Result<T, Error> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let path = match e.path().to_string() {
            p if p == "." && !prefix.is_empty() => prefix.to_string(),
            p if p.starts_with('[') || prefix.is_empty() => format!("{prefix}{p}"),
            p => format!("{prefix}.{p}"),
        };
        Error::Parse(format!("{path}: {}", e.into_inner()))
    })
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Hopf(j) if j.antipode.is_none() => "bialgebra",
            Document::Hopf(_) => "hopf",
            Document::Tetramodule(_) => "tetramodule",
            Document::DgCategory(_) => "dg-category",
            Document::DgAlgebra(_) => "dg-algebra",
            Document::Monoidal(_) => "monoidal-dg-category",
        }
    }

    pub fn parse(text: &str) -> Result<Document, Error> {
        let mut v: Value = serde_json::from_str(text).map_err(|e| Error::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
        let kind = match v.get("kind") {
            Some(Value::String(k)) => k.clone(),
            Some(_) => return Err(Error::Parse("kind: expected a string".into())),
            None => return Err(Error::Parse(format!("kind: missing (one of {KINDS})"))),
        };
        if kind != "hopf" && kind != "bialgebra" {
            v.as_object_mut().expect("has a kind field").remove("kind");
        }
        Ok(match kind.as_str() {
            "hopf" | "bialgebra" => Document::Hopf(typed(v)?),
            "tetramodule" => Document::Tetramodule(typed(v)?),
            "dg-category" => {
                let marked = match v.as_object_mut().expect("has a kind field").remove("marked") {
                    Some(m) => typed_at(m, "marked")?,
                    None => Vec::new(),
                };
                Document::DgCategory(DgCategoryDoc { category: typed(v)?, marked })
            }
            "dg-algebra" => Document::DgAlgebra(typed(v)?),
            "monoidal-dg-category" => Document::Monoidal(typed(v)?),
            other => return Err(Error::Parse(format!("kind: unknown kind {other:?} (one of {KINDS})"))),
        })
    }

    pub fn read(path: &Path) -> Result<Document, Error> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Document::parse(&text).map_err(|e| match e {
            Error::Parse(m) => Error::Parse(format!("{}: {m}", path.display())),
            other => other,
        })
    }

    pub fn to_json(&self) -> String {
        let mut v = match self {
            Document::Hopf(j) => serde_json::to_value(j),
            Document::Tetramodule(j) => serde_json::to_value(j),
            Document::DgCategory(j) => serde_json::to_value(j),
            Document::DgAlgebra(j) => serde_json::to_value(j),
            Document::Monoidal(j) => serde_json::to_value(j),
        }
        .expect("documents serialize");
        v.as_object_mut().expect("documents are objects").insert("kind".into(), Value::String(self.kind().into()));
        serde_json::to_string_pretty(&v).expect("documents serialize") + "\n"
    }
}
