//! The JSON interchange format: a problem document carrying the algebra,
//! step, weights, points, parameter set and candidate tuple, plus optional
//! sections used by individual CLI commands. Rationals are "p/q" strings
//! ("p" when the denominator is 1); polynomials are ascending coefficient
//! arrays.

use crate::bethe::{BetheProblem, ParameterSet, Tuple};
use crate::error::{Error, Result};
use crate::liealg::{cartan_matrix, Family, Weight, WeylWord};
use crate::ratpoly::{parse_rat, RatPoly};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ParamSpec {
    /// "special" or "ow"
    Named(String),
    Explicit { explicit: Vec<Vec<String>> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProblemFile {
    pub family: String,
    pub rank: usize,
    pub h: String,
    pub weights: Vec<Vec<i64>>,
    pub z: Vec<String>,
    pub parameters: ParamSpec,
    pub tuple: Vec<Vec<String>>,
    /// Direction sequence for `populate --word` (reproduction order).
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word: Option<Vec<usize>>,
    /// Reproduction parameters, one per word letter; "inf" allowed.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<String>>,
    /// Weyl words for cell exploration.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub words: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    /// Direction index for single-direction commands.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub direction: Option<usize>,
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<ProblemFile> {
        serde_json::from_str(text).map_err(|e| Error::Invalid(format!("problem file: {e}")))
    }

    pub fn to_problem(&self) -> Result<(BetheProblem, Tuple)> {
        let family = Family::parse(&self.family)?;
        let cartan = cartan_matrix(family, self.rank)?;
        let h = parse_rat(&self.h)?;
        let weights = self
            .weights
            .iter()
            .map(|c| Weight::new(c.clone()))
            .collect();
        let z = self
            .z
            .iter()
            .map(|s| parse_rat(s))
            .collect::<Result<Vec<_>>>()?;
        let params = match &self.parameters {
            ParamSpec::Named(name) => match name.as_str() {
                "special" => ParameterSet::special(self.rank, &h),
                "ow" | "ogievetsky_wiegman" => ParameterSet::ogievetsky_wiegman(self.rank, &h),
                other => {
                    return Err(Error::Invalid(format!(
                        "unknown parameter set `{other}` (expected \"special\", \"ow\", or an explicit table)"
                    )))
                }
            },
            ParamSpec::Explicit { explicit } => {
                let table = explicit
                    .iter()
                    .map(|row| row.iter().map(|s| parse_rat(s)).collect())
                    .collect::<Result<Vec<Vec<_>>>>()?;
                ParameterSet::explicit(table)?
            }
        };
        let problem = BetheProblem::new(cartan, h, weights, z, params)?;
        if self.tuple.len() != self.rank {
            return Err(Error::Invalid(format!(
                "tuple has {} entries for rank {}",
                self.tuple.len(),
                self.rank
            )));
        }
        let polys = self
            .tuple
            .iter()
            .map(|coeffs| {
                coeffs
                    .iter()
                    .map(|s| parse_rat(s))
                    .collect::<Result<Vec<_>>>()
                    .map(RatPoly::new)
            })
            .collect::<Result<Vec<_>>>()?;
        let tuple = Tuple::new(polys)?;
        Ok((problem, tuple))
    }

    pub fn weyl_words(&self) -> Result<Vec<WeylWord>> {
        self.words
            .clone()
            .unwrap_or_default()
            .into_iter()
            .map(|letters| WeylWord::new(letters, self.rank))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bethe::ParamKind;
    use crate::ratpoly::{rat, rat_int};

    const SL2: &str = r#"{
        "family": "A", "rank": 1, "h": "1",
        "weights": [[1]], "z": ["0"],
        "parameters": "special",
        "tuple": [["1"]]
    }"#;

    #[test]
    fn parse_minimal() {
        let pf = ProblemFile::from_json(SL2).unwrap();
        let (problem, tuple) = pf.to_problem().unwrap();
        assert_eq!(problem.rank(), 1);
        assert_eq!(problem.h, rat_int(1));
        assert_eq!(tuple, Tuple::ones(1));
        assert_eq!(problem.params.kind, ParamKind::Special);
    }

    #[test]
    fn parse_explicit_and_optionals() {
        let text = r#"{
            "family": "A", "rank": 2, "h": "1/2",
            "weights": [[1, 0]], "z": ["-3/2"],
            "parameters": {"explicit": [["0", "1/4"], ["1/4", "0"]]},
            "tuple": [["1"], ["0", "1"]],
            "word": [1, 2], "params": ["0", "inf"],
            "words": [[], [1], [2, 1]], "samples": 3
        }"#;
        let pf = ProblemFile::from_json(text).unwrap();
        let (problem, tuple) = pf.to_problem().unwrap();
        assert_eq!(problem.params.b(1, 2), &rat(1, 4));
        assert_eq!(tuple.poly(2), &RatPoly::x());
        assert_eq!(pf.word, Some(vec![1, 2]));
        assert_eq!(pf.weyl_words().unwrap().len(), 3);
        assert_eq!(pf.samples, Some(3));
    }

    #[test]
    fn rejects_bad_documents() {
        // wrong tuple arity
        let text = r#"{
            "family": "A", "rank": 2, "h": "1",
            "weights": [[1, 0]], "z": ["0"],
            "parameters": "special",
            "tuple": [["1"]]
        }"#;
        assert!(ProblemFile::from_json(text).unwrap().to_problem().is_err());
        // unknown family
        let text = SL2.replace("\"A\"", "\"X\"");
        assert!(ProblemFile::from_json(&text).unwrap().to_problem().is_err());
        // unknown named parameter set
        let text = SL2.replace("\"special\"", "\"weird\"");
        assert!(ProblemFile::from_json(&text).unwrap().to_problem().is_err());
        // malformed JSON
        assert!(ProblemFile::from_json("{").is_err());
    }
}
