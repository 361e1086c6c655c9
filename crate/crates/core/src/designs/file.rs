//! JSON design files.
//!
//! Symmetric designs: `{"v":7,"blocks":[[0,1,3],...]}`.
//! Almost difference sets: `{"n":6,"D":[0,1,3]}`.
//! Output is compact JSON followed by a newline; with canonical ordering the
//! bytes depend only on the design.

use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{classify_ads, AlmostDifferenceSet, Classification, SymmetricDesign};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignFile {
    pub v: usize,
    pub blocks: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdsFile {
    pub n: usize,
    #[serde(rename = "D")]
    pub set: Vec<usize>,
}

impl SymmetricDesign {
    pub fn to_json(&self) -> String {
        let file = DesignFile {
            v: self.v(),
            blocks: self.blocks().to_vec(),
        };
        let mut s = serde_json::to_string(&file).expect("design serializes");
        s.push('\n');
        s
    }

    /// Parses and verifies; a design that fails verification is rejected.
    pub fn from_json(text: &str) -> Result<Self> {
        let file: DesignFile = serde_json::from_str(text)?;
        SymmetricDesign::new(file.v, file.blocks)
    }

    pub fn export(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn import(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

impl AlmostDifferenceSet {
    pub fn to_json(&self) -> String {
        let file = AdsFile {
            n: self.n(),
            set: self.set().to_vec(),
        };
        let mut s = serde_json::to_string(&file).expect("ads serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: AdsFile = serde_json::from_str(text)?;
        match classify_ads(&file.set, file.n)? {
            Classification::Ads(a) => Ok(a),
            Classification::NotAds(hist) => Err(Error::Verification(format!(
                "not an almost difference set; difference histogram {hist:?}"
            ))),
        }
    }

    pub fn export(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }

    pub fn import(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::projective_plane;

    #[test]
    fn plane_round_trip() {
        let d = projective_plane(2).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("fano.json");
        d.export(&path).unwrap();
        assert_eq!(SymmetricDesign::import(&path).unwrap(), d);
        assert_eq!(std::fs::read_to_string(&path).unwrap(), d.to_json());
    }

    #[test]
    fn hand_written_fano_accepted() {
        let text = r#"{"v":7,"blocks":[[0,1,3],[1,2,4],[2,3,5],[3,4,6],[0,4,5],[1,5,6],[0,2,6]]}"#;
        let d = SymmetricDesign::from_json(text).unwrap();
        assert_eq!((d.v(), d.t(), d.lambda()), (7, 3, 1));
    }

    #[test]
    fn six_blocks_rejected() {
        let text = r#"{"v":7,"blocks":[[0,1,3],[1,2,4],[2,3,5],[3,4,6],[0,4,5],[1,5,6]]}"#;
        match SymmetricDesign::from_json(text) {
            Err(Error::Verification(msg)) => assert!(msg.contains("block count"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_json() {
        assert!(matches!(SymmetricDesign::from_json("{\"v\":"), Err(Error::Parse(_))));
    }

    #[test]
    fn ads_round_trip() {
        let a = AlmostDifferenceSet::from_json(r#"{"n":6,"D":[3,0,1]}"#).unwrap();
        assert_eq!(a.params(), (6, 3, 1, 4));
        assert_eq!(a.to_json(), "{\"n\":6,\"D\":[0,1,3]}\n");
        assert!(matches!(
            AlmostDifferenceSet::from_json(r#"{"n":8,"D":[0,1,2]}"#),
            Err(Error::Verification(_))
        ));
    }
}
