//! Built-in model families: generator-set constructors together with their
//! closed-form combinatorics, each cross-checkable against the generic
//! engine.

pub mod free_tree;
pub mod sandpile;
pub mod toom;
pub mod tsetlin;

use crate::error::{Error, Result};

/// Description of one registered model constructor.
#[derive(Clone, Debug)]
pub struct ModelInfo {
    pub name: &'static str,
    pub summary: &'static str,
    /// Human-readable parameter schema (flag names and value shapes).
    pub params: &'static str,
}

/// Stable registry of the built-in models, in fixed listing order.
pub fn model_registry() -> Vec<ModelInfo> {
    vec![
        ModelInfo {
            name: "tsetlin",
            summary: "move-to-front library on permutations of k books",
            params: "--k <int>",
        },
        ModelInfo {
            name: "toom-fixed",
            summary: "multiple-copy shelf with fixed content",
            params: "--content n1,n2,...",
        },
        ModelInfo {
            name: "toom-loan",
            summary: "shelf of length L over m books with insertions",
            params: "--m <int> --shelf <int>",
        },
        ModelInfo {
            name: "free-tree",
            summary: "free tree monoid on n ordered letters, left regular walk",
            params: "--n <int>",
        },
        ModelInfo {
            name: "sandpile",
            summary: "landslide sandpile on an arborescence",
            params: "--parents p0,p1,... (-1 for root) --thresholds t0,t1,...",
        },
        ModelInfo {
            name: "exchange-walk",
            summary: "exchange walk on reduced words of the longest element",
            params: "--system <e.g. A2xA1, B2, I2(5)>",
        },
    ]
}

/// Looks up a registered model by name.
pub fn lookup_model(name: &str) -> Result<ModelInfo> {
    model_registry()
        .into_iter()
        .find(|m| m.name == name)
        .ok_or_else(|| Error::UnknownModel(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_is_stable() {
        let names: Vec<&str> = model_registry().iter().map(|m| m.name).collect();
        assert_eq!(
            names,
            vec![
                "tsetlin",
                "toom-fixed",
                "toom-loan",
                "free-tree",
                "sandpile",
                "exchange-walk"
            ]
        );
    }

    #[test]
    fn unknown_model_is_an_error() {
        assert!(matches!(
            lookup_model("nonsense"),
            Err(Error::UnknownModel(_))
        ));
    }
}
