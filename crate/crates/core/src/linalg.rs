//! Exact sparse linear algebra over `Q(i, √2)`.
//!
//! Columns are eliminated one at a time against the pivots found so far. A
//! new pivot sits at the smallest row of the reduced column, and every
//! dependent column yields the kernel vector `e_col − Σ combination`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::field::Scalar;
use crate::operators::Operator;
use crate::superspace::{block_basis, BasisKey, Element, SpaceConfig};

pub type SparseVec<R> = BTreeMap<R, Scalar>;

struct Pivot<R> {
    row: R,
    /// Normalised so that the entry at `row` is 1.
    vec: SparseVec<R>,
    /// The pivot vector as a combination of input columns.
    combo: SparseVec<usize>,
}

/// Column-incremental row echelon form.
pub struct Echelon<R: Ord + Clone> {
    pivots: Vec<Pivot<R>>,
    by_row: BTreeMap<R, usize>,
    pivot_cols: Vec<usize>,
}

/// What happened to a column fed into an [`Echelon`].
pub enum Insert {
    Pivot,
    /// The column is dependent; the vector is a kernel element in column space.
    Dependent(SparseVec<usize>),
}

fn axpy<R: Ord + Clone>(v: &mut SparseVec<R>, f: &Scalar, x: &SparseVec<R>) {
    for (r, a) in x {
        let delta = f * a;
        match v.get_mut(r) {
            Some(e) => {
                *e -= &delta;
                if e.is_zero() {
                    v.remove(r);
                }
            }
            None => {
                v.insert(r.clone(), -delta);
            }
        }
    }
}

fn scale<K: Ord>(m: SparseVec<K>, f: &Scalar) -> SparseVec<K> {
    m.into_iter().map(|(k, a)| (k, &a * f)).collect()
}

impl<R: Ord + Clone> Default for Echelon<R> {
    fn default() -> Self {
        Self::new()
    }
}

impl<R: Ord + Clone> Echelon<R> {
    pub fn new() -> Self {
        Echelon {
            pivots: Vec::new(),
            by_row: BTreeMap::new(),
            pivot_cols: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Input column indices that became pivots.
    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivot_cols
    }

    /// Reduces `v` against the pivots; returns the residual and the multiples
    /// of each pivot that were subtracted.
    pub fn reduce(&self, mut v: SparseVec<R>) -> (SparseVec<R>, Vec<(usize, Scalar)>) {
        let mut used = Vec::new();
        let mut pending: BTreeSet<usize> = v.keys().filter_map(|r| self.by_row.get(r).copied()).collect();
        while let Some(t) = pending.pop_first() {
            let p = &self.pivots[t];
            let Some(f) = v.get(&p.row).cloned() else {
                continue;
            };
            axpy(&mut v, &f, &p.vec);
            for r in p.vec.keys() {
                if let Some(&u) = self.by_row.get(r) {
                    if u > t && v.contains_key(r) {
                        pending.insert(u);
                    }
                }
            }
            used.push((t, f));
        }
        (v, used)
    }

    pub fn contains(&self, v: SparseVec<R>) -> bool {
        self.reduce(v).0.is_empty()
    }

    /// Adds column number `col`.
    pub fn insert(&mut self, col: usize, v: SparseVec<R>) -> Insert {
        let (residual, used) = self.reduce(v);
        let mut combo: SparseVec<usize> = BTreeMap::new();
        combo.insert(col, Scalar::one());
        for (t, f) in &used {
            axpy(&mut combo, f, &self.pivots[*t].combo);
        }
        let Some((row, lead)) = residual.iter().next().map(|(r, a)| (r.clone(), a.clone())) else {
            return Insert::Dependent(combo);
        };
        let inv = lead.inv().expect("nonzero lead");
        let idx = self.pivots.len();
        self.pivots.push(Pivot {
            row: row.clone(),
            vec: scale(residual, &inv),
            combo: scale(combo, &inv),
        });
        self.by_row.insert(row, idx);
        self.pivot_cols.push(col);
        Insert::Pivot
    }
}

/// Result of eliminating a list of columns.
pub struct Elimination {
    pub rank: usize,
    pub pivot_columns: Vec<usize>,
    /// One kernel vector per non-pivot column, in column order.
    pub kernel: Vec<SparseVec<usize>>,
}

fn eliminate_serial<R: Ord + Clone>(cols: &[(usize, &SparseVec<R>)]) -> Elimination {
    let mut ech = Echelon::new();
    let mut kernel = Vec::new();
    for (idx, v) in cols {
        if let Insert::Dependent(k) = ech.insert(*idx, (*v).clone()) {
            kernel.push(k);
        }
    }
    Elimination {
        rank: ech.rank(),
        pivot_columns: ech.pivot_cols,
        kernel,
    }
}

/// Groups columns into connected components of the row/column incidence graph.
fn components<R: Ord + Clone>(cols: &[SparseVec<R>]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..cols.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut owner: BTreeMap<&R, usize> = BTreeMap::new();
    for (c, v) in cols.iter().enumerate() {
        for r in v.keys() {
            match owner.get(r) {
                Some(&o) => {
                    let (a, b) = (find(&mut parent, o), find(&mut parent, c));
                    if a != b {
                        parent[a.max(b)] = a.min(b);
                    }
                }
                None => {
                    owner.insert(r, c);
                }
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for c in 0..cols.len() {
        let root = find(&mut parent, c);
        groups.entry(root).or_default().push(c);
    }
    groups.into_values().collect()
}

/// Eliminates the columns, splitting into independent components that are
/// processed in parallel. The result matches a single serial pass.
pub fn eliminate<R: Ord + Clone + Send + Sync>(cols: &[SparseVec<R>]) -> Elimination {
    let comps = components(cols);
    let parts: Vec<Elimination> = comps
        .par_iter()
        .map(|comp| {
            let sub: Vec<(usize, &SparseVec<R>)> = comp.iter().map(|&c| (c, &cols[c])).collect();
            eliminate_serial(&sub)
        })
        .collect();
    let mut pivot_columns: Vec<usize> = parts.iter().flat_map(|p| p.pivot_columns.iter().copied()).collect();
    pivot_columns.sort_unstable();
    let mut kernel: Vec<SparseVec<usize>> = parts.into_iter().flat_map(|p| p.kernel).collect();
    kernel.sort_by_key(|k| *k.keys().next_back().expect("kernel vectors contain their column"));
    Elimination {
        rank: pivot_columns.len(),
        pivot_columns,
        kernel,
    }
}

/// Matrix of an operator between enumerated bases.
#[derive(Clone, Debug)]
pub struct BlockMatrix {
    pub domain: Vec<BasisKey>,
    pub codomain: Vec<BasisKey>,
    /// Column `c` holds the image of `domain[c]` indexed by codomain row.
    columns: Vec<SparseVec<usize>>,
}

impl BlockMatrix {
    /// Builds the matrix from the images of each domain vector.
    pub fn from_images(domain: Vec<BasisKey>, images: Vec<Element>) -> Self {
        let mut rows: BTreeSet<BasisKey> = BTreeSet::new();
        for im in &images {
            rows.extend(im.keys().copied());
        }
        let codomain: Vec<BasisKey> = rows.into_iter().collect();
        let index: BTreeMap<BasisKey, usize> = codomain.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        let columns = images
            .into_iter()
            .map(|im| im.into_terms().into_iter().map(|(k, c)| (index[&k], c)).collect())
            .collect();
        BlockMatrix {
            domain,
            codomain,
            columns,
        }
    }

    pub fn rows(&self) -> usize {
        self.codomain.len()
    }

    pub fn cols(&self) -> usize {
        self.domain.len()
    }

    pub fn entry(&self, row: usize, col: usize) -> Scalar {
        self.columns[col].get(&row).cloned().unwrap_or_default()
    }

    pub fn column(&self, col: usize) -> &SparseVec<usize> {
        &self.columns[col]
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn eliminate(&self) -> Elimination {
        eliminate(&self.columns)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().rank
    }

    /// Kernel basis as coefficient vectors over the domain.
    pub fn kernel_vectors(&self) -> Vec<SparseVec<usize>> {
        self.eliminate().kernel
    }

    /// Kernel basis as elements of `P ⊗ S`.
    pub fn kernel_basis(&self) -> Vec<Element> {
        self.kernel_vectors()
            .into_iter()
            .map(|v| Element::from_terms(v.into_iter().map(|(i, c)| (self.domain[i], c))))
            .collect()
    }

    /// Images of the pivot columns, which span the image.
    pub fn image_basis(&self) -> Vec<Element> {
        self.eliminate()
            .pivot_columns
            .into_iter()
            .map(|c| self.column_element(c))
            .collect()
    }

    fn column_element(&self, c: usize) -> Element {
        Element::from_terms(self.columns[c].iter().map(|(r, a)| (self.codomain[*r], a.clone())))
    }

    /// `A x` for a dense coefficient vector over the domain.
    pub fn mul_vec(&self, x: &[Scalar]) -> Result<Vec<Scalar>> {
        if x.len() != self.cols() {
            return Err(Error::DimensionMismatch {
                expected: self.cols(),
                got: x.len(),
            });
        }
        let mut out = vec![Scalar::zero(); self.rows()];
        for (c, xc) in x.iter().enumerate() {
            if xc.is_zero() {
                continue;
            }
            for (r, a) in &self.columns[c] {
                out[*r] += &(a * xc);
            }
        }
        Ok(out)
    }

    /// Whether `v` lies in the column span.
    pub fn member(&self, v: &Element) -> bool {
        member(v, &(0..self.cols()).map(|c| self.column_element(c)).collect::<Vec<_>>())
    }

    /// CSV with one row per matrix row, each cell a `p/q;p/q;p/q;p/q` tuple.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in 0..self.rows() {
            let cells: Vec<String> = (0..self.cols())
                .map(|c| self.entry(r, c).to_strings().join(";"))
                .collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

/// Matrix of `op` on `P_k ⊗ S^{≤q}`, with the exact image as codomain.
pub fn block_matrix(op: &Operator, k: usize, q: usize) -> Result<BlockMatrix> {
    let meta = op.meta();
    let (plo, phi) = meta
        .poly_shift
        .ok_or_else(|| Error::UnboundedShift(op.label().to_string()))?;
    let (_, thi) = meta
        .t_shift
        .ok_or_else(|| Error::UnboundedShift(op.label().to_string()))?;
    let domain = block_basis(op.config(), k, q);
    let images: Vec<Element> = domain.par_iter().map(|key| op.apply_basis(*key)).collect();
    for im in &images {
        for (p, s) in im.keys() {
            let dp = p.degree() as i64 - k as i64;
            debug_assert!(plo <= dp && dp <= phi);
            debug_assert!(s.t_degree() as i64 <= q as i64 + thi);
        }
    }
    Ok(BlockMatrix::from_images(domain, images))
}

/// Matrix of `op` restricted to the span of `vectors`, with columns in order.
pub fn restricted_matrix(op: &Operator, vectors: &[Element]) -> BlockMatrix {
    let images: Vec<Element> = vectors.par_iter().map(|v| op.apply(v)).collect();
    let domain = (0..vectors.len()).map(|_| Default::default()).collect();
    BlockMatrix::from_images(domain, images)
}

/// Kernel of `op` on `span(vectors)`, as elements.
pub fn kernel_on(op: &Operator, vectors: &[Element]) -> Vec<Element> {
    let m = restricted_matrix(op, vectors);
    combine(vectors, &m.kernel_vectors())
}

/// `Σ c_i vectors[i]` for each coefficient vector.
pub fn combine(vectors: &[Element], coeffs: &[SparseVec<usize>]) -> Vec<Element> {
    coeffs
        .par_iter()
        .map(|k| {
            let mut e = Element::zero();
            for (i, c) in k {
                e.add_scaled(&vectors[*i], c);
            }
            e
        })
        .collect()
}

fn to_sparse(e: &Element) -> SparseVec<BasisKey> {
    e.terms().clone()
}

/// Dimension of the span.
pub fn span_rank(vectors: &[Element]) -> usize {
    let cols: Vec<_> = vectors.iter().map(to_sparse).collect();
    eliminate(&cols).rank
}

/// A maximal independent subset, chosen greedily from the left.
pub fn span_basis(vectors: &[Element]) -> Vec<Element> {
    let cols: Vec<_> = vectors.iter().map(to_sparse).collect();
    eliminate(&cols)
        .pivot_columns
        .into_iter()
        .map(|c| vectors[c].clone())
        .collect()
}

pub fn member(v: &Element, span: &[Element]) -> bool {
    let mut ech = Echelon::new();
    for (i, s) in span.iter().enumerate() {
        ech.insert(i, to_sparse(s));
    }
    ech.contains(to_sparse(v))
}

/// Basis of `span(us) ∩ span(ws)`.
pub fn intersect(us: &[Element], ws: &[Element]) -> Vec<Element> {
    let us = span_basis(us);
    let ws = span_basis(ws);
    let mut cols: Vec<SparseVec<BasisKey>> = us.iter().map(to_sparse).collect();
    cols.extend(ws.iter().map(|w| to_sparse(&-w)));
    let kernel = eliminate(&cols).kernel;
    let vecs: Vec<Element> = kernel
        .iter()
        .map(|k| {
            let mut e = Element::zero();
            for (i, c) in k {
                if *i < us.len() {
                    e.add_scaled(&us[*i], c);
                }
            }
            e
        })
        .collect();
    span_basis(&vecs)
}

/// Whether two lists span the same subspace.
pub fn same_span(us: &[Element], ws: &[Element]) -> bool {
    let r = span_rank(us);
    r == span_rank(ws) && ws.iter().all(|w| member(w, us))
}

/// Checks `A x = 0` for every kernel vector, without truncating the image.
pub fn annihilates(op: &Operator, vectors: &[Element]) -> bool {
    vectors.par_iter().all(|v| op.apply(v).is_zero())
}

pub fn space_of(cfg: &SpaceConfig, k: usize, q: usize) -> Vec<Element> {
    block_basis(cfg, k, q).into_iter().map(Element::basis).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operators::{dirac, laplace, Operator};
    use crate::superspace::SpinorMonomial;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Dense elimination with a random column order; returns rank and the
    /// number of kernel vectors.
    fn dense_rank(m: &BlockMatrix, rng: &mut ChaCha8Rng) -> usize {
        let mut perm: Vec<usize> = (0..m.cols()).collect();
        perm.shuffle(rng);
        let mut a: Vec<Vec<Scalar>> = (0..m.rows())
            .map(|r| perm.iter().map(|&c| m.entry(r, c)).collect())
            .collect();
        let (rows, cols) = (m.rows(), m.cols());
        let mut rank = 0;
        for c in 0..cols {
            let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let inv = a[rank][c].inv().unwrap();
            for x in a[rank].iter_mut() {
                *x = &*x * &inv;
            }
            for r in 0..rows {
                if r != rank && !a[r][c].is_zero() {
                    let f = a[r][c].clone();
                    let pivot = a[rank].clone();
                    for (x, y) in a[r].iter_mut().zip(pivot.iter()) {
                        *x -= &(&f * y);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn e(k: u8) -> Element {
        Element::basis((Default::default(), SpinorMonomial::from_parts(k, [0; 8])))
    }

    #[test]
    fn partial_matrix_has_single_unit() {
        let c = SpaceConfig::new(3, 1).unwrap();
        let m = block_matrix(&Operator::partial(&c, 1), 1, 0).unwrap();
        assert_eq!(m.cols(), 10);
        assert_eq!(m.rows(), 2);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.entry(0, 0), Scalar::one());
    }

    #[test]
    fn zero_operator_gives_zero_matrix() {
        let c = SpaceConfig::new(3, 1).unwrap();
        let m = block_matrix(&Operator::zero(&c), 2, 1).unwrap();
        assert!(m.is_zero());
        assert_eq!(m.kernel_basis().len(), m.cols());
    }

    #[test]
    fn classical_harmonics_degree_two() {
        let c = SpaceConfig::new(3, 0).unwrap();
        let polys: Vec<Element> = crate::superspace::poly_basis(&c, 2).into_iter().map(Element::poly).collect();
        assert_eq!(kernel_on(&laplace(&c), &polys).len(), 5);
        let m = block_matrix(&laplace(&c), 2, 0).unwrap();
        assert_eq!(m.kernel_basis().len(), 10);
    }

    #[test]
    fn intersection_of_coordinate_planes() {
        let u = [e(1), e(2)];
        let w = [e(2), e(3)];
        let i = intersect(&u, &w);
        assert_eq!(i.len(), 1);
        assert!(same_span(&i, &[e(2)]));
    }

    #[test]
    fn dirac_kernel_agrees_with_dense_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let c = SpaceConfig::new(3, 1).unwrap();
        for (k, q) in [(1, 0), (1, 2), (2, 2)] {
            let m = block_matrix(&dirac(&c), k, q).unwrap();
            let ker = m.kernel_basis();
            assert_eq!(ker.len() + dense_rank(&m, &mut rng), m.cols());
            assert!(annihilates(&dirac(&c), &ker));
            assert_eq!(span_rank(&ker), ker.len());
        }
    }

    fn random_matrix(rng: &mut ChaCha8Rng) -> BlockMatrix {
        let rows = rng.gen_range(1..8);
        let cols = rng.gen_range(1..8);
        let units = [Scalar::one(), Scalar::i(), Scalar::sqrt2(), Scalar::frac(-1, 2)];
        let images: Vec<Element> = (0..cols)
            .map(|_| {
                let mut v = Element::zero();
                for r in 0..rows {
                    if rng.gen_bool(0.4) {
                        let a = units[rng.gen_range(0..units.len())].clone();
                        v.add_term(
                            (Default::default(), SpinorMonomial::from_parts(r as u8, [0; 8])),
                            &a * &Scalar::from(rng.gen_range(-3..=3)),
                        );
                    }
                }
                v
            })
            .collect();
        BlockMatrix::from_images(vec![Default::default(); cols], images)
    }

    #[test]
    fn rank_nullity_and_permutation_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let m = random_matrix(&mut rng);
            let el = m.eliminate();
            assert_eq!(el.rank + el.kernel.len(), m.cols());
            assert_eq!(el.rank, dense_rank(&m, &mut rng));
            for k in &el.kernel {
                let mut x = vec![Scalar::zero(); m.cols()];
                for (i, c) in k {
                    x[*i] = c.clone();
                }
                assert!(m.mul_vec(&x).unwrap().iter().all(Scalar::is_zero));
            }
        }
    }

    #[test]
    fn components_match_serial_elimination() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let m = random_matrix(&mut rng);
            let cols: Vec<(usize, &SparseVec<usize>)> = (0..m.cols()).map(|c| (c, m.column(c))).collect();
            let serial = eliminate_serial(&cols);
            let par = m.eliminate();
            assert_eq!(serial.pivot_columns, par.pivot_columns);
            assert_eq!(serial.kernel, par.kernel);
        }
    }

    #[test]
    fn mul_vec_checks_dimension() {
        let c = SpaceConfig::new(3, 1).unwrap();
        let m = block_matrix(&Operator::partial(&c, 1), 1, 0).unwrap();
        assert!(matches!(
            m.mul_vec(&[Scalar::one()]),
            Err(Error::DimensionMismatch { expected: 10, got: 1 })
        ));
    }

    #[test]
    fn membership_matches_annihilation() {
        let c = SpaceConfig::new(3, 1).unwrap();
        let d = dirac(&c);
        let m = block_matrix(&d, 2, 1).unwrap();
        let ker = m.kernel_basis();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let mut v = Element::zero();
            for key in &m.domain {
                if rng.gen_bool(0.2) {
                    v.add_term(*key, Scalar::from(rng.gen_range(-2..=2)));
                }
            }
            if rng.gen_bool(0.5) {
                v = Element::zero();
                for k in &ker {
                    v.add_scaled(k, &Scalar::from(rng.gen_range(-2..=2)));
                }
            }
            assert_eq!(member(&v, &ker), d.apply(&v).is_zero());
        }
    }

    #[test]
    fn csv_export() {
        let c = SpaceConfig::new(1, 0).unwrap();
        let m = block_matrix(&Operator::partial(&c, 1), 2, 0).unwrap();
        assert_eq!(m.to_csv(), "2/1;0/1;0/1;0/1\n");
    }
}
