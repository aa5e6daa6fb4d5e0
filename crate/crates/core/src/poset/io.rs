use serde::{Deserialize, Serialize};

use super::{builtin, FinitePoset};
use crate::error::{Error, Result};

/// On-disk poset description:
/// `{"elements": ["1","2","3"], "covers": [["1","3"],["2","3"]]}`.
///
/// Element names map to dense ids in listed order; a cover `[a, b]` means
/// `b` covers `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<String>,
    #[serde(default)]
    pub covers: Vec<[String; 2]>,
}

impl PosetFile {
    pub fn into_poset(self) -> Result<FinitePoset> {
        let lookup = |name: &str| {
            self.elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| Error::input(format!("cover mentions unknown element {name:?}")))
        };
        let covers = self
            .covers
            .iter()
            .map(|[a, b]| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        FinitePoset::new(self.elements, covers)
    }
}

impl From<&FinitePoset> for PosetFile {
    fn from(p: &FinitePoset) -> Self {
        PosetFile {
            elements: p.names().to_vec(),
            covers: p
                .covers()
                .iter()
                .map(|&(a, b)| [p.name(a).to_owned(), p.name(b).to_owned()])
                .collect(),
        }
    }
}

impl FinitePoset {
    pub fn from_json_str(text: &str) -> Result<FinitePoset> {
        let file: PosetFile =
            serde_json::from_str(text).map_err(|e| Error::input(format!("bad poset JSON: {e}")))?;
        file.into_poset()
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&PosetFile::from(self)).expect("poset file serializes")
    }

    /// Resolves a poset source: a built-in name, or a path to a JSON file.
    pub fn load(source: &str) -> Result<FinitePoset> {
        match builtin(source) {
            Ok(p) => Ok(p),
            Err(builtin_err) => {
                let path = std::path::Path::new(source);
                if path.exists() {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| Error::input(format!("cannot read {source}: {e}")))?;
                    Self::from_json_str(&text)
                } else {
                    Err(builtin_err)
                }
            }
        }
    }
}
