use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{eliminate, Echelon, SparseVec};
use crate::operators::{bracket, howe_generator, Grading, HoweTag, Operator};
use crate::superspace::{block_basis_upto, BasisKey, Element, SpaceConfig};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HoweReport {
    pub d_cut: usize,
    pub q_cut: usize,
    pub generators: usize,
    pub rank: usize,
    pub expected_rank: usize,
    pub rank_next_cut: usize,
    pub brackets_checked: usize,
    /// First bracket found outside the span.
    pub outside: Option<String>,
}

impl HoweReport {
    pub fn passed(&self) -> bool {
        self.rank == self.expected_rank && self.rank == self.rank_next_cut && self.outside.is_none()
    }
}

/// `dim osp(a|b) = a(a−1)/2 + b(b+1)/2 + ab` for even `b`.
pub fn osp_dimension(a: usize, b: usize) -> usize {
    a * a.saturating_sub(1) / 2 + b * (b + 1) / 2 + a * b
}

type OpVector = SparseVec<(usize, BasisKey)>;

fn as_vector(op: &Operator, basis: &[BasisKey]) -> OpVector {
    let mut out = BTreeMap::new();
    for (i, key) in basis.iter().enumerate() {
        for (k, c) in op.apply(&Element::basis(*key)).into_terms() {
            out.insert((i, k), c);
        }
    }
    out
}

fn rank_at(gens: &[Operator], basis: &[BasisKey]) -> (usize, Vec<usize>, Vec<OpVector>) {
    let vectors: Vec<OpVector> = gens.par_iter().map(|g| as_vector(g, basis)).collect();
    let el = eliminate(&vectors);
    (el.rank, el.pivot_columns, vectors)
}

/// Rank of the Howe generators acting on `P_{≤d_cut} ⊗ S^{≤q_cut}`, stability
/// of that rank at `d_cut + 1`, and closure of the span under brackets.
pub fn howe_closure_check(cfg: &SpaceConfig, d_cut: usize, q_cut: usize) -> Result<HoweReport> {
    let tags = HoweTag::all(cfg);
    let gens: Vec<Operator> = tags.iter().map(|t| howe_generator(cfg, *t)).collect();
    let basis = block_basis_upto(cfg, d_cut, q_cut);
    let (rank, pivots, vectors) = rank_at(&gens, &basis);
    let (rank_next_cut, _, _) = rank_at(&gens, &block_basis_upto(cfg, d_cut + 1, q_cut));
    if rank != rank_next_cut {
        return Err(Error::RankUnstable {
            cut: d_cut,
            next: d_cut + 1,
            lower: rank,
            upper: rank_next_cut,
        });
    }
    let mut span = Echelon::new();
    for &p in &pivots {
        span.insert(p, vectors[p].clone());
    }
    let pv = &pivots;
    let pairs: Vec<(usize, usize)> = (0..pv.len())
        .flat_map(|a| (a..pv.len()).map(move |b| (pv[a], pv[b])))
        .collect();
    let outside = pairs
        .par_iter()
        .map(|&(a, b)| -> Result<Option<String>> {
            let br = bracket(&gens[a], &gens[b], Grading::Howe)?;
            Ok((!span.contains(as_vector(&br, &basis))).then(|| format!("[{:?}, {:?}]", tags[a], tags[b])))
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .next();
    let (m, n) = (cfg.m(), cfg.n());
    Ok(HoweReport {
        d_cut,
        q_cut,
        generators: gens.len(),
        rank,
        expected_rank: osp_dimension(m + 4 * n, 2 * m + 2 * n),
        rank_next_cut,
        brackets_checked: pairs.len(),
        outside,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_formula() {
        assert_eq!(osp_dimension(7, 8), 113);
        assert_eq!(osp_dimension(5, 10), 115);
        assert_eq!(osp_dimension(1, 2), 5);
    }

    #[test]
    fn classical_line_closes() {
        let r = howe_closure_check(&SpaceConfig::new(1, 0).unwrap(), 2, 0).unwrap();
        assert_eq!(r.expected_rank, 5);
        assert!(r.passed(), "{r:?}");
    }
}
