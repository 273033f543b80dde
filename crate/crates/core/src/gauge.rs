//! Classification of pairwise-shift parameter sets and the explicit
//! equivalence between symmetric sets on a tree Dynkin diagram: per-node
//! argument shifts d^(i) computed along the unique diagram paths from
//! vertex 1, carrying any symmetric set to a canonical depth-graded one.

use crate::bethe::{BetheProblem, ParameterSet, Tuple};
use crate::error::{Error, Result};
use crate::liealg::CartanData;
use crate::ratpoly::Rat;
use num_traits::Zero;
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct ClassifyReport {
    pub symmetric: bool,
    pub special: bool,
    pub ogievetsky_wiegman: bool,
}

/// Report whether the table is symmetric (b_{i,m} + b_{m,i} = h), the
/// special set (0 below / h above the diagonal), the all-h/2 set, or
/// merely explicit.
pub fn classify(params: &ParameterSet, h: &Rat) -> ClassifyReport {
    let r = params.rank();
    let half = h / Rat::from_integer(2.into());
    let mut special = true;
    let mut ow = true;
    for i in 1..=r {
        for m in 1..=r {
            if i == m {
                continue;
            }
            let b = params.b(i, m);
            if b != &half {
                ow = false;
            }
            let want = if i < m { h.clone() } else { Rat::zero() };
            if b != &want {
                special = false;
            }
        }
    }
    ClassifyReport {
        symmetric: params.is_symmetric(h),
        special,
        ogievetsky_wiegman: ow,
    }
}

/// Per-node argument shifts establishing the equivalence of a symmetric
/// set with the canonical target set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaugeShift {
    pub d: Vec<Rat>,
    pub target: ParameterSet,
}

/// Unique Dynkin path from vertex 1 to each vertex (vertex lists,
/// 1-based), found by breadth-first search; errors if the diagram is not
/// connected or not a tree.
fn diagram_paths(cartan: &CartanData) -> Result<Vec<Vec<usize>>> {
    let r = cartan.rank;
    let mut paths: Vec<Option<Vec<usize>>> = vec![None; r];
    paths[0] = Some(vec![1]);
    let mut queue = std::collections::VecDeque::from([1usize]);
    let mut edges = 0usize;
    while let Some(i) = queue.pop_front() {
        for j in 1..=r {
            if cartan.adjacent(i, j) {
                if j > i {
                    edges += 1;
                }
                if paths[j - 1].is_none() {
                    let mut p = paths[i - 1].clone().unwrap();
                    p.push(j);
                    paths[j - 1] = Some(p);
                    queue.push_back(j);
                }
            }
        }
    }
    if paths.iter().any(|p| p.is_none()) {
        return Err(Error::Invalid("Dynkin diagram is not connected".into()));
    }
    if edges != r - 1 {
        return Err(Error::Invalid("Dynkin diagram is not a tree".into()));
    }
    Ok(paths.into_iter().map(|p| p.unwrap()).collect())
}

/// Shifts d^(i) = sum of b1 along the path from vertex 1 to vertex i
/// minus (k-1)h, where k is the path's vertex count; d^(1) = 0. Also
/// builds the target set: b_{i,j} = h when vertex i is closer to vertex 1
/// than vertex j (ties broken by index, smaller index gets h), else 0.
pub fn tree_shifts(cartan: &CartanData, b1: &ParameterSet, h: &Rat) -> Result<GaugeShift> {
    if !b1.is_symmetric(h) {
        return Err(Error::Invalid("parameter set is not symmetric".into()));
    }
    let paths = diagram_paths(cartan)?;
    let r = cartan.rank;
    let mut d = Vec::with_capacity(r);
    for path in &paths {
        let mut v = Rat::zero();
        for w in path.windows(2) {
            v += b1.b(w[0], w[1]) - h;
        }
        d.push(v);
    }
    let delta: Vec<usize> = paths.iter().map(|p| p.len()).collect();
    let mut table = vec![vec![Rat::zero(); r]; r];
    for i in 1..=r {
        for j in 1..=r {
            if i == j {
                continue;
            }
            let closer = delta[i - 1] < delta[j - 1]
                || (delta[i - 1] == delta[j - 1] && i < j);
            if closer {
                table[i - 1][j - 1] = h.clone();
            }
        }
    }
    let target = ParameterSet::explicit(table)?;
    Ok(GaugeShift { d, target })
}

/// Transport a problem and tuple along a shift: entry i becomes the monic
/// form of y_i(x + d^(i)), T_i becomes T_i(x + d^(i)) (carried explicitly,
/// since one point z_s feeds several nodes with different shifts), and the
/// parameters become the shift's target set.
pub fn transform(
    problem: &BetheProblem,
    tuple: &Tuple,
    shift: &GaugeShift,
) -> Result<(BetheProblem, Tuple)> {
    let r = problem.rank();
    if shift.d.len() != r || shift.target.rank() != r {
        return Err(Error::Invalid("shift rank mismatch".into()));
    }
    let ts = (1..=r).map(|i| problem.build_t(i).shift(&shift.d[i - 1])).collect();
    let mut new_problem = problem.clone();
    new_problem.params = shift.target.clone();
    new_problem.explicit_t = Some(ts);
    let polys = (1..=r)
        .map(|i| tuple.poly(i).shift(&shift.d[i - 1]))
        .collect();
    Ok((new_problem, Tuple::new(polys)?))
}
