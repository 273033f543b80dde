//! Reproduction of solutions: the one-parameter simple step, word-driven
//! iteration, diagonal sequences of raw Wronskian solutions, and cell
//! exploration with degree bookkeeping against the shifted Weyl action.

use crate::bethe::{is_bethe, is_fertile, is_generic, BetheProblem, Tuple};
use crate::error::{Error, Result};
use crate::liealg::WeylWord;
use crate::ratpoly::{rat_string, Rat, RatPoly};
use serde::Serialize;

/// Parameter on the projective line: a rational c, or the point at
/// infinity which returns the base tuple unchanged.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Param {
    Finite(Rat),
    Infinity,
}

impl Param {
    pub fn to_string_canonical(&self) -> String {
        match self {
            Param::Finite(c) => rat_string(c),
            Param::Infinity => "inf".to_string(),
        }
    }

    pub fn parse(s: &str) -> Result<Param> {
        let s = s.trim();
        if s == "inf" || s == "infinity" || s == "oo" {
            Ok(Param::Infinity)
        } else {
            Ok(Param::Finite(crate::ratpoly::parse_rat(s)?))
        }
    }
}

/// The one-parameter family produced by a fertility witness: member(c)
/// replaces the i-th entry with the monic form of ytilde + c * y_i, and
/// member(infinity) is the base tuple.
#[derive(Debug, Clone)]
pub struct ReproductionFamily {
    pub base: Tuple,
    pub direction: usize,
    pub ytilde: RatPoly,
}

impl ReproductionFamily {
    pub fn new(problem: &BetheProblem, base: Tuple, direction: usize) -> Result<Self> {
        let ytilde = is_fertile(problem, &base, direction)?
            .ok_or(Error::NotFertile(direction))?;
        Ok(ReproductionFamily {
            base,
            direction,
            ytilde,
        })
    }

    pub fn member(&self, c: &Param) -> Result<Tuple> {
        match c {
            Param::Infinity => Ok(self.base.clone()),
            Param::Finite(c) => {
                let y = self.base.poly(self.direction);
                let new = &self.ytilde + &y.scalar_mul(c);
                self.base.with_entry(self.direction, new)
            }
        }
    }
}

/// One simple reproduction step; errors if the tuple is infertile in the
/// requested direction.
pub fn simple_reproduce(
    problem: &BetheProblem,
    tuple: &Tuple,
    i: usize,
    c: &Param,
) -> Result<Tuple> {
    ReproductionFamily::new(problem, tuple.clone(), i)?.member(c)
}

/// Per-step record of a word reproduction.
#[derive(Debug, Clone, Serialize)]
pub struct StepRecord {
    pub direction: usize,
    pub parameter: String,
    pub degrees: Vec<i64>,
    pub generic: bool,
}

#[derive(Debug, Clone)]
pub struct WordReproduction {
    pub result: Tuple,
    pub steps: Vec<StepRecord>,
}

/// Fold simple reproduction along a direction sequence. Non-generic
/// intermediates are flagged in the step records but do not stop the
/// fold; fertility failure at step d is an error naming d.
pub fn reproduce_word(
    problem: &BetheProblem,
    tuple: &Tuple,
    directions: &[usize],
    params: &[Param],
) -> Result<WordReproduction> {
    if directions.len() != params.len() {
        return Err(Error::Invalid(format!(
            "{} directions but {} parameters",
            directions.len(),
            params.len()
        )));
    }
    let mut current = tuple.clone();
    let mut steps = Vec::with_capacity(directions.len());
    for (d, (&i, c)) in directions.iter().zip(params).enumerate() {
        current = simple_reproduce(problem, &current, i, c).map_err(|e| match e {
            Error::NotFertile(dir) => Error::FertilityAtStep {
                step: d + 1,
                direction: dir,
            },
            other => other,
        })?;
        steps.push(StepRecord {
            direction: i,
            parameter: c.to_string_canonical(),
            degrees: current.degrees(),
            generic: is_generic(problem, &current).generic,
        });
    }
    Ok(WordReproduction {
        result: current,
        steps,
    })
}

/// The raw (non-monic) chain of Wronskian solutions along a direction
/// sequence. `tuples[d]` is the tuple after d+1 steps with parameter 0;
/// `diagonal[d]` is the raw pinned solution whose monic form enters it.
#[derive(Debug, Clone)]
pub struct DiagonalSequence {
    pub directions: Vec<usize>,
    pub tuples: Vec<Tuple>,
    pub diagonal: Vec<RatPoly>,
}

/// Successive raw Wronskian solutions: at each step the solve uses the
/// current tuple (whose entries from earlier steps are the raw previous
/// solutions, not their monic forms), so the chain relations
/// W(y_prev, y_next) = T * (shifted neighbor product) hold exactly.
pub fn diagonal_sequence(
    problem: &BetheProblem,
    tuple: &Tuple,
    directions: &[usize],
) -> Result<DiagonalSequence> {
    let mut raw = tuple.polys().to_vec();
    let mut tuples = Vec::with_capacity(directions.len());
    let mut diagonal = Vec::with_capacity(directions.len());
    for (d, &i) in directions.iter().enumerate() {
        let y = raw[i - 1].clone();
        let q = build_q_raw(problem, &raw, i);
        let next = crate::ratpoly::solve_wronskian(&y, &q, &problem.h, y.deg())?.ok_or(
            Error::FertilityAtStep {
                step: d + 1,
                direction: i,
            },
        )?;
        raw[i - 1] = next.clone();
        diagonal.push(next);
        tuples.push(Tuple::new(raw.clone())?);
    }
    Ok(DiagonalSequence {
        directions: directions.to_vec(),
        tuples,
        diagonal,
    })
}

/// Q_i for a raw (possibly non-monic) polynomial collection.
pub(crate) fn build_q_raw(problem: &BetheProblem, raw: &[RatPoly], i: usize) -> RatPoly {
    let mut out = problem.build_t(i);
    for m in 1..=problem.rank() {
        if m == i {
            continue;
        }
        let e = -problem.cartan.a(i, m);
        if e > 0 {
            out = &out * &raw[m - 1].shift(problem.params.b(i, m)).pow(e as u32);
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct CellRecord {
    pub word: Vec<usize>,
    pub predicted_degrees: Vec<i64>,
    pub dimension: usize,
    pub members: Vec<Vec<Vec<String>>>,
    pub member_degrees: Vec<Vec<i64>>,
    pub resampling_exhausted: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PopulationReport {
    pub base_degrees: Vec<i64>,
    pub cells: Vec<CellRecord>,
}

/// Deterministic parameter draws 0, 1, -1, 2, -2, ...
fn draw(k: usize) -> Rat {
    let n = (k as i64 + 1) / 2;
    Rat::from_integer(if k % 2 == 1 { n } else { -n }.into())
}

/// Sample members of the cell of each word. A word here is a Weyl word;
/// the reproduction steps run along its reversed letters so that the
/// resulting degree vector matches the shifted-action prediction for the
/// word itself. Samples failing the a-posteriori genericity check are
/// redrawn from the deterministic sequence; a degree-vector mismatch on
/// a generic sample is an invariant error.
pub fn explore_cells(
    problem: &BetheProblem,
    base: &Tuple,
    words: &[WeylWord],
    samples_per_word: usize,
) -> Result<PopulationReport> {
    if !is_bethe(problem, base)? {
        return Err(Error::Invalid(
            "base tuple does not represent a solution".into(),
        ));
    }
    let base_degrees = base.degrees();
    if !problem.infinity_weight(&base_degrees).is_dominant() {
        return Err(Error::Invalid(
            "base weight at infinity is not dominant".into(),
        ));
    }
    let mut cells = Vec::with_capacity(words.len());
    for word in words {
        let predicted = problem.degrees_for(&base_degrees, word)?;
        let directions: Vec<usize> = word.letters.iter().rev().copied().collect();
        let mut members = Vec::new();
        let mut member_degrees = Vec::new();
        let mut exhausted = false;
        let mut k = 0usize;
        let budget = samples_per_word * 8 + 16;
        while members.len() < samples_per_word && k < budget {
            let params: Vec<Param> = (0..directions.len())
                .map(|p| Param::Finite(draw(k + p)))
                .collect();
            k += 1;
            let rep = match reproduce_word(problem, base, &directions, &params) {
                Ok(r) => r,
                Err(Error::FertilityAtStep { .. }) => continue,
                Err(e) => return Err(e),
            };
            if !is_bethe(problem, &rep.result)? {
                continue;
            }
            let observed = rep.result.degrees();
            if observed != predicted {
                return Err(Error::Invariant(format!(
                    "cell degrees {:?} do not match prediction {:?} for word {:?}",
                    observed, predicted, word.letters
                )));
            }
            member_degrees.push(observed);
            members.push(
                rep.result
                    .polys()
                    .iter()
                    .map(|p| p.to_strings())
                    .collect(),
            );
        }
        if members.len() < samples_per_word {
            exhausted = true;
        }
        cells.push(CellRecord {
            word: word.letters.clone(),
            predicted_degrees: predicted,
            dimension: word.len(),
            members,
            member_degrees,
            resampling_exhausted: exhausted,
        });
    }
    Ok(PopulationReport {
        base_degrees,
        cells,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bethe::ParameterSet;
    use crate::liealg::{cartan_matrix, Family, Weight};
    use crate::ratpoly::{rat, rat_int};

    fn sl2_problem() -> BetheProblem {
        let c = cartan_matrix(Family::A, 1).unwrap();
        BetheProblem::new(
            c,
            rat_int(1),
            vec![Weight::new(vec![1])],
            vec![rat_int(0)],
            ParameterSet::special(1, &rat_int(1)),
        )
        .unwrap()
    }

    fn a2_problem() -> BetheProblem {
        let c = cartan_matrix(Family::A, 2).unwrap();
        BetheProblem::new(
            c,
            rat_int(1),
            vec![Weight::fundamental(2, 1)],
            vec![rat_int(0)],
            ParameterSet::special(2, &rat_int(1)),
        )
        .unwrap()
    }

    #[test]
    fn simple_reproduction_members() {
        let p = sl2_problem();
        let base = Tuple::ones(1);
        // infinity returns the base
        let same = simple_reproduce(&p, &base, 1, &Param::Infinity).unwrap();
        assert_eq!(same, base);
        // c = 0: monic form of -x^2/2 is x^2
        let m0 = simple_reproduce(&p, &base, 1, &Param::Finite(rat_int(0))).unwrap();
        assert_eq!(m0.poly(1), &RatPoly::from_i64(&[0, 0, 1]));
        // c = 1: -x^2/2 + 1, monic x^2 - 2
        let m1 = simple_reproduce(&p, &base, 1, &Param::Finite(rat_int(1))).unwrap();
        assert_eq!(m1.poly(1), &RatPoly::from_i64(&[-2, 0, 1]));
        // infertile direction is rejected
        let bad = Tuple::new(vec![RatPoly::x()]).unwrap();
        assert!(matches!(
            simple_reproduce(&p, &bad, 1, &Param::Infinity),
            Err(Error::NotFertile(1))
        ));
    }

    #[test]
    fn word_reproduction_a2() {
        let p = a2_problem();
        let base = Tuple::ones(2);
        let rep = reproduce_word(
            &p,
            &base,
            &[1, 2],
            &[Param::Finite(rat_int(0)), Param::Finite(rat_int(0))],
        )
        .unwrap();
        assert_eq!(rep.result.poly(1), &RatPoly::from_i64(&[0, 0, 1]));
        // monic form of x^3/6 - x^2/4 + x/12 ... scaled by 6:
        // x^3 - 3x^2/2 + x/2
        assert_eq!(
            rep.result.poly(2),
            &RatPoly::new(vec![rat_int(0), rat(1, 2), rat(-3, 2), rat_int(1)])
        );
        assert_eq!(rep.result.degrees(), vec![2, 3]);
        // empty word is the identity
        let id = reproduce_word(&p, &base, &[], &[]).unwrap();
        assert_eq!(id.result, base);
    }

    #[test]
    fn diagonal_sequence_values() {
        let p = sl2_problem();
        let d = diagonal_sequence(&p, &Tuple::ones(1), &[1]).unwrap();
        assert_eq!(
            d.diagonal,
            vec![RatPoly::new(vec![rat_int(0), rat_int(0), rat(-1, 2)])]
        );
        let a2 = a2_problem();
        let d = diagonal_sequence(&a2, &Tuple::ones(2), &[1, 2]).unwrap();
        assert_eq!(
            d.diagonal,
            vec![
                RatPoly::new(vec![rat_int(0), rat_int(0), rat(-1, 2)]),
                RatPoly::new(vec![rat_int(0), rat(1, 12), rat(-1, 4), rat(1, 6)]),
            ]
        );
        // direction 2 alone: W(1, u) = T_2 * y_1(x + b_{2,1}) = 1,
        // so u = -x
        let d = diagonal_sequence(&a2, &Tuple::ones(2), &[2]).unwrap();
        assert_eq!(d.diagonal, vec![RatPoly::new(vec![rat_int(0), rat_int(-1)])]);
    }

    #[test]
    fn diagonal_sequence_relations_hold() {
        // each step satisfies W(y_prev, y_next) = Q computed from the raw
        // collection before the step
        let a2 = a2_problem();
        let base = Tuple::ones(2);
        let dirs = [1, 2, 1];
        let d = diagonal_sequence(&a2, &base, &dirs).unwrap();
        let mut raw = base.polys().to_vec();
        for (step, &i) in dirs.iter().enumerate() {
            let q = build_q_raw(&a2, &raw, i);
            let w = crate::ratpoly::discrete_wronskian(
                &raw[i - 1],
                &d.diagonal[step],
                &a2.h,
            )
            .unwrap();
            assert_eq!(w, q, "step {}", step + 1);
            raw[i - 1] = d.diagonal[step].clone();
        }
    }

    #[test]
    fn cells_sl2() {
        let p = sl2_problem();
        let words = vec![WeylWord::identity(), WeylWord::new(vec![1], 1).unwrap()];
        let report = explore_cells(&p, &Tuple::ones(1), &words, 3).unwrap();
        assert_eq!(report.cells[0].predicted_degrees, vec![0]);
        assert_eq!(report.cells[0].dimension, 0);
        assert_eq!(report.cells[1].predicted_degrees, vec![2]);
        assert_eq!(report.cells[1].dimension, 1);
        assert!(!report.cells[1].resampling_exhausted);
        assert_eq!(report.cells[1].members.len(), 3);
    }

    #[test]
    fn cells_a2() {
        let p = a2_problem();
        let words = vec![
            WeylWord::identity(),
            WeylWord::new(vec![1], 2).unwrap(),
            WeylWord::new(vec![2, 1], 2).unwrap(),
        ];
        let report = explore_cells(&p, &Tuple::ones(2), &words, 2).unwrap();
        assert_eq!(report.cells[0].predicted_degrees, vec![0, 0]);
        assert_eq!(report.cells[1].predicted_degrees, vec![2, 0]);
        assert_eq!(report.cells[2].predicted_degrees, vec![2, 3]);
        for cell in &report.cells {
            assert!(!cell.resampling_exhausted, "word {:?}", cell.word);
        }
    }

    #[test]
    fn containment_by_padding() {
        // the cell of a subword is reachable inside the longer word by
        // setting the extra parameters to infinity
        let p = a2_problem();
        let base = Tuple::ones(2);
        let short = reproduce_word(&p, &base, &[1], &[Param::Finite(rat_int(1))]).unwrap();
        let padded = reproduce_word(
            &p,
            &base,
            &[1, 2],
            &[Param::Finite(rat_int(1)), Param::Infinity],
        )
        .unwrap();
        assert_eq!(short.result, padded.result);
    }
}
