//! JSON documents read by the CLI.
//!
//! ```json
//! { "n": 3, "kind": "minimal_coalitions", "coalitions": [[0, 1], [0, 2], [1, 2]] }
//! { "n": 4, "kind": "majority_chair", "chair": 0 }
//! { "n": 3, "kind": "dictatorship", "dictator": 1 }
//! { "n": 5, "kind": "weighted", "weights": [3, 1, 1, 1, 1], "quota": 4 }
//! { "profiles": [1, 3, 5], "names": ["ann", "bob", "cy"] }
//! ```
//!
//! Member indices are 0-based; profile labels are 1-based.

use std::path::Path;

use guilbaud_core::prelude::*;
use guilbaud_core::systems::weighted_family;
use serde::{Deserialize, Serialize};

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemDocument {
    pub n: usize,
    #[serde(flatten)]
    pub kind: SystemKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SystemKind {
    MinimalCoalitions { coalitions: Vec<Vec<usize>> },
    MajorityChair { chair: usize },
    Dictatorship { dictator: usize },
    Weighted { weights: Vec<u64>, quota: u64 },
}

impl SystemDocument {
    /// The described family, whether or not it satisfies C1.
    pub fn to_family(&self) -> Result<VotingSystem, guilbaud_core::Error> {
        match &self.kind {
            SystemKind::MinimalCoalitions { coalitions } => {
                VotingSystem::from_member_lists(self.n, coalitions.iter().cloned())
            }
            SystemKind::MajorityChair { chair } => majority_with_chair(self.n, *chair),
            SystemKind::Dictatorship { dictator } => dictatorship(self.n, *dictator),
            SystemKind::Weighted { weights, quota } => {
                if weights.len() != self.n {
                    return Err(guilbaud_core::Error::AssemblyMismatch {
                        expected: self.n,
                        found: weights.len(),
                    });
                }
                weighted_family(weights, *quota)
            }
        }
    }

    /// The described system, rejected unless it is a Guilbaud system.
    pub fn to_system(&self) -> Result<VotingSystem, guilbaud_core::Error> {
        let sys = self.to_family()?;
        match sys.validate().violation {
            None => Ok(sys),
            Some(v) => Err(guilbaud_core::Error::NotGuilbaud(v)),
        }
    }

    pub fn from_system(sys: &VotingSystem) -> Self {
        SystemDocument {
            n: sys.n(),
            kind: SystemKind::MinimalCoalitions {
                coalitions: sys
                    .minimal()
                    .iter()
                    .map(|m| m.members().collect())
                    .collect(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssignmentDocument {
    pub profiles: Vec<u8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
}

impl AssignmentDocument {
    pub fn to_assignment(&self) -> Result<Assignment, CliError> {
        if let Some(names) = &self.names {
            if names.len() != self.profiles.len() {
                return Err(CliError::Usage(format!(
                    "names has {} entries but profiles has {}",
                    names.len(),
                    self.profiles.len()
                )));
            }
        }
        Assignment::from_labels(&self.profiles).map_err(|e| CliError::Usage(e.to_string()))
    }

    pub fn member_name(&self, member: usize) -> String {
        match &self.names {
            Some(names) => names[member].clone(),
            None => member.to_string(),
        }
    }
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_every_kind() {
        let docs = [
            r#"{"n": 3, "kind": "minimal_coalitions", "coalitions": [[0, 1], [0, 2], [1, 2]]}"#,
            r#"{"n": 3, "kind": "majority_chair", "chair": 2}"#,
            r#"{"n": 3, "kind": "dictatorship", "dictator": 1}"#,
            r#"{"n": 3, "kind": "weighted", "weights": [1, 1, 1], "quota": 2}"#,
        ];
        let systems: Vec<VotingSystem> = docs
            .iter()
            .map(|d| {
                serde_json::from_str::<SystemDocument>(d)
                    .unwrap()
                    .to_system()
                    .unwrap()
            })
            .collect();
        assert_eq!(systems[0], systems[1]);
        assert_eq!(systems[0], systems[3]);
        assert_eq!(systems[2], dictatorship(3, 1).unwrap());
    }

    #[test]
    fn weighted_length_must_match() {
        let doc: SystemDocument = serde_json::from_str(
            r#"{"n": 4, "kind": "weighted", "weights": [1, 1, 1], "quota": 2}"#,
        )
        .unwrap();
        assert!(doc.to_family().is_err());
    }

    #[test]
    fn invalid_family_is_rejected() {
        let doc: SystemDocument = serde_json::from_str(
            r#"{"n": 2, "kind": "minimal_coalitions", "coalitions": [[0], [1]]}"#,
        )
        .unwrap();
        assert!(doc.to_family().is_ok());
        assert!(matches!(
            doc.to_system(),
            Err(guilbaud_core::Error::NotGuilbaud(_))
        ));
    }

    #[test]
    fn unknown_kind_fails_to_parse() {
        assert!(serde_json::from_str::<SystemDocument>(r#"{"n": 2, "kind": "lottery"}"#).is_err());
    }

    #[test]
    fn assignment_names() {
        let doc: AssignmentDocument =
            serde_json::from_str(r#"{"profiles": [1, 2], "names": ["x"]}"#).unwrap();
        assert!(doc.to_assignment().is_err());
        let doc: AssignmentDocument = serde_json::from_str(r#"{"profiles": [1, 7]}"#).unwrap();
        assert!(doc.to_assignment().is_err());
    }
}
