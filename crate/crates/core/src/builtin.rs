//! Bundled scenarios.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scenario::{load_str, Scenario};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Category {
    WorkedExample,
    TheoremBattery,
    /// Falsification scenarios: expected to fail.
    Counterexample,
    /// Questions outside the decidable family: expected to be inconclusive.
    Refusal,
}

impl Category {
    pub fn expected_exit(self) -> i32 {
        match self {
            Category::WorkedExample | Category::TheoremBattery => 0,
            Category::Counterexample => 1,
            Category::Refusal => 2,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Category::WorkedExample => "worked-example",
            Category::TheoremBattery => "theorem-battery",
            Category::Counterexample => "counterexample",
            Category::Refusal => "refusal",
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct Builtin {
    pub name: &'static str,
    pub category: Category,
    pub description: &'static str,
    #[serde(skip)]
    pub source: &'static str,
}

macro_rules! bundled {
    ($name:literal, $cat:ident, $desc:literal) => {
        Builtin {
            name: $name,
            category: Category::$cat,
            description: $desc,
            source: include_str!(concat!("../scenarios/", $name, ".json")),
        }
    };
}

pub const BUILTINS: &[Builtin] = &[
    bundled!("example-3a", WorkedExample, "a|x-y| against (b|x-y|, c|x-y|) on the line: operator certificate and its perturbations"),
    bundled!("example-3b", WorkedExample, "weighted sum against coordinate pair on the plane: operator certificate and convergence cross-check"),
    bundled!("example-3b-max", WorkedExample, "weighted max against coordinate pair on the plane with a max-combination operator"),
    bundled!("isometry-identity", WorkedExample, "the identity is a vector isometry from a|x-y| to (b|x-y|, c|x-y|)"),
    bundled!("pullback-equivalence", WorkedExample, "a homeomorphism pulls the target metric back to an equivalent metric"),
    bundled!("vector-metric-axioms", TheoremBattery, "random shortest-path tables satisfy the axioms, perturbed ones are caught"),
    bundled!("thm-topological-vectorial", TheoremBattery, "topological continuity implies vectorial continuity for Archimedean codomains"),
    bundled!("prop-product-componentwise", TheoremBattery, "convergence in a product metric is componentwise convergence"),
    bundled!("thm-coincidence-closed", TheoremBattery, "coincidence sets of continuous maps are closed"),
    bundled!("thm-uniform-limit", TheoremBattery, "uniform limits of continuous maps are continuous, with the combined witness"),
    bundled!("birkhoff-cvo", TheoremBattery, "joins and meets of certified functions and the uniform metric"),
    bundled!("lexplane-archimedean-counterexample", Counterexample, "the lexicographic plane is not Archimedean and refuses 1/n witnesses"),
    bundled!("vm2-violation", Counterexample, "a table breaking the triangle inequality, with its triple"),
    bundled!("non-lattice-homomorphism", Counterexample, "a positive matrix that does not preserve joins"),
    bundled!("symbolic-family-refusal", Refusal, "a suite item whose image leaves the closed-form family"),
];

pub fn list_builtin_suites() -> &'static [Builtin] {
    BUILTINS
}

pub fn builtin(name: &str) -> Option<&'static Builtin> {
    BUILTINS.iter().find(|b| b.name == name)
}

pub fn load_builtin(name: &str) -> Result<Scenario> {
    let b = builtin(name).ok_or_else(|| Error::Load(format!("no bundled scenario named `{name}`")))?;
    load_str(b.source)
}
